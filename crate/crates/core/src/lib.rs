//! Exact intersection-lattice invariants of curve configurations on minimal
//! class VII surfaces with positive second Betti number.
//!
//! * [`lattice`]: the unimodular lattice with basis `L_0, ..., L_{n-1}`.
//! * [`config`]: curve configurations, their dual graph and the sigma verdict.
//! * [`nac`]: numerically anticanonical divisors and the index.
//! * [`enumerate`]: admissible homology representations of the curves.
//! * [`germ`]: parameter checks for contracting germs.
//! * [`report`]: file ingestion and the machine-readable reports of the CLI.

pub mod config;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod germ;
pub mod lattice;
pub mod linalg;
pub mod nac;
pub mod oracle;
pub mod report;
pub mod selftest;

pub use config::{Curve, CurveConfig, CurveKind, SigmaVerdict};
pub use enumerate::{enumerate, type_b_exclusion_check, verify, Representation};
pub use error::{Error, Result};
pub use lattice::{intersect, IndexSet, LatticeClass, NormalForm};
pub use linalg::{is_negative_definite, Definiteness, IntMatrix};
pub use nac::{index_of, solve_nac, NacOutcome, NacSolution};
