use thiserror::Error;

/// Errors raised by the lattice, configuration and solver layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("insufficient curves: {found} rational curves for b2 = {b2}")]
    InsufficientCurves { found: usize, b2: usize },

    #[error("enumeration cap exceeded: b2 = {b2} > cap {cap}")]
    CapExceeded { b2: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
