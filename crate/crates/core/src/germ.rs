//! Parameter conditions for Hopf and Enoki contracting germs.
//!
//! Parameters are exact complex rationals when written as integers, decimals
//! or fractions (`0.6`, `3/5`, `1/2+1/3i`), and floating point otherwise
//! (`6e-1`). Moduli are compared through their squares. The algebraic
//! resonance relations are decided exactly for exact input and with an
//! absolute tolerance for floating input.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::config::{Curve, CurveConfig, CurveKind};
use crate::error::{Error, Result};
use crate::report::ratio_string;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum ComplexParam {
    Exact(Complex<BigRational>),
    Float(Complex64),
}

/// A real quantity derived from parameters, e.g. a squared modulus.
#[derive(Debug, Clone, PartialEq)]
pub enum Real {
    Exact(BigRational),
    Float(f64),
}

impl Real {
    fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Real::Float(x) => *x,
        }
    }

    fn cmp_with(&self, other: &Real) -> Option<std::cmp::Ordering> {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => Some(a.cmp(b)),
            _ => self.to_f64().partial_cmp(&other.to_f64()),
        }
    }

    fn lt(&self, other: &Real) -> bool {
        self.cmp_with(other) == Some(std::cmp::Ordering::Less)
    }

    fn le(&self, other: &Real) -> bool {
        matches!(self.cmp_with(other), Some(std::cmp::Ordering::Less | std::cmp::Ordering::Equal))
    }

    fn zero() -> Real {
        Real::Exact(BigRational::zero())
    }

    fn one() -> Real {
        Real::Exact(BigRational::one())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(r) => write!(f, "{}", ratio_string(r)),
            Real::Float(x) => write!(f, "{x:e}"),
        }
    }
}

fn parse_real(s: &str) -> Option<Real> {
    let exact = || -> Option<BigRational> {
        if let Some((p, q)) = s.split_once('/') {
            let q: BigInt = q.parse().ok()?;
            if q.is_zero() {
                return None;
            }
            return Some(BigRational::new(p.parse().ok()?, q));
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s.strip_prefix('+').unwrap_or(s)),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("{int}{frac}").parse().ok()?;
        let r = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
        Some(if neg { -r } else { r })
    };
    match exact() {
        Some(r) => Some(Real::Exact(r)),
        None => s.parse::<f64>().ok().filter(|x| x.is_finite()).map(Real::Float),
    }
}

impl FromStr for ComplexParam {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Domain(format!("malformed complex number {input:?}"));
        let (re, im) = match s.strip_suffix('i') {
            None => (s.as_str(), "0"),
            Some(body) => {
                // Split at the last sign that is neither leading nor an exponent sign.
                let bytes = body.as_bytes();
                let cut = (1..bytes.len())
                    .rev()
                    .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
                match cut {
                    Some(k) => (&body[..k], &body[k..]),
                    None => ("0", body),
                }
            }
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        let re = parse_real(re).ok_or_else(bad)?;
        let im = parse_real(im).ok_or_else(bad)?;
        Ok(match (re, im) {
            (Real::Exact(a), Real::Exact(b)) => ComplexParam::Exact(Complex::new(a, b)),
            (a, b) => ComplexParam::Float(Complex64::new(a.to_f64(), b.to_f64())),
        })
    }
}

impl ComplexParam {
    pub fn real(x: BigRational) -> Self {
        ComplexParam::Exact(Complex::new(x, BigRational::zero()))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::real(BigRational::new(p.into(), q.into()))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ComplexParam::Exact(_))
    }

    pub fn to_f64(&self) -> Complex64 {
        match self {
            ComplexParam::Exact(z) => {
                Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
            }
            ComplexParam::Float(z) => *z,
        }
    }

    fn binary(
        &self,
        other: &Self,
        exact: impl Fn(&Complex<BigRational>, &Complex<BigRational>) -> Complex<BigRational>,
        float: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Self {
        match (self, other) {
            (ComplexParam::Exact(a), ComplexParam::Exact(b)) => ComplexParam::Exact(exact(a, b)),
            _ => ComplexParam::Float(float(self.to_f64(), other.to_f64())),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.binary(other, |a, b| a + b, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.binary(other, |a, b| a - b, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.binary(other, |a, b| a * b, |a, b| a * b)
    }

    pub fn pow(&self, k: u32) -> Self {
        match self {
            ComplexParam::Exact(z) => {
                let mut acc = Complex::new(BigRational::one(), BigRational::zero());
                for _ in 0..k {
                    acc *= z;
                }
                ComplexParam::Exact(acc)
            }
            ComplexParam::Float(z) => ComplexParam::Float(z.powu(k)),
        }
    }

    /// `None` at zero.
    pub fn inv(&self) -> Option<Self> {
        match self {
            ComplexParam::Exact(z) => {
                let d = z.norm_sqr();
                (!d.is_zero()).then(|| ComplexParam::Exact(Complex::new(&z.re / &d, -&z.im / &d)))
            }
            ComplexParam::Float(z) => (z.norm_sqr() != 0.0).then(|| ComplexParam::Float(z.inv())),
        }
    }

    pub fn norm_sqr(&self) -> Real {
        match self {
            ComplexParam::Exact(z) => Real::Exact(z.norm_sqr()),
            ComplexParam::Float(z) => Real::Float(z.norm_sqr()),
        }
    }

    /// Exact zero test, or `|z| <= tol` for floating values.
    pub fn is_zero_within(&self, tol: f64) -> bool {
        match self {
            ComplexParam::Exact(z) => z.re.is_zero() && z.im.is_zero(),
            ComplexParam::Float(z) => z.norm() <= tol,
        }
    }

    pub fn is_real_positive(&self) -> bool {
        match self {
            ComplexParam::Exact(z) => z.im.is_zero() && z.re.is_positive(),
            ComplexParam::Float(z) => z.im == 0.0 && z.re > 0.0,
        }
    }
}

impl fmt::Display for ComplexParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexParam::Exact(z) => {
                if z.im.is_zero() {
                    write!(f, "{}", ratio_string(&z.re))
                } else if z.re.is_zero() {
                    write!(f, "{}i", ratio_string(&z.im))
                } else {
                    let sign = if z.im.is_negative() { "-" } else { "+" };
                    write!(f, "{}{sign}{}i", ratio_string(&z.re), ratio_string(&z.im.abs()))
                }
            }
            ComplexParam::Float(z) => {
                if z.im == 0.0 {
                    write!(f, "{:e}", z.re)
                } else {
                    write!(f, "{:e}{:+e}i", z.re, z.im)
                }
            }
        }
    }
}

impl Serialize for ComplexParam {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn condition(name: &'static str, passed: bool, detail: String) -> Condition {
    Condition { name, passed, detail }
}

/// `F(z1, z2) = (alpha z1 + s z2^m, a alpha^-1 z2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfGermStrong {
    pub alpha: ComplexParam,
    pub a: ComplexParam,
    pub s: ComplexParam,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrongVerdict {
    pub valid: bool,
    pub conditions: Vec<Condition>,
    /// The inequality chain treats `a` as a positive real; this is reported
    /// separately and does not affect `valid`.
    pub a_real_positive: bool,
}

pub fn validate_strong(g: &HopfGermStrong, tol: f64) -> StrongVerdict {
    let al2 = g.alpha.norm_sqr();
    let a2 = g.a.norm_sqr();
    let al4 = match &al2 {
        Real::Exact(x) => Real::Exact(x * x),
        Real::Float(x) => Real::Float(x * x),
    };
    let relation = g.a.pow(g.m).sub(&g.alpha.pow(g.m + 1)).mul(&g.s);
    let conditions = vec![
        condition("alpha_nonzero", Real::zero().lt(&al2), format!("|alpha|^2 = {al2}")),
        condition("alpha_sq_le_a", al4.le(&a2), format!("|alpha|^4 = {al4}, |a|^2 = {a2}")),
        condition("a_lt_alpha", a2.lt(&al2), format!("|a|^2 = {a2}, |alpha|^2 = {al2}")),
        condition("alpha_lt_one", al2.lt(&Real::one()), format!("|alpha|^2 = {al2}")),
        condition(
            "resonance",
            relation.is_zero_within(tol),
            format!("(a^m - alpha^(m+1)) s = {relation}"),
        ),
    ];
    StrongVerdict {
        valid: g.m > 0 && conditions.iter().all(|c| c.passed),
        conditions,
        a_real_positive: g.a.is_real_positive(),
    }
}

/// Primary Hopf germ with eigenvalues `alpha1, alpha2` and resonant term `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct HopfGermPrimary {
    pub alpha1: ComplexParam,
    pub alpha2: ComplexParam,
    pub s: ComplexParam,
    pub m: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimaryVerdict {
    pub valid: bool,
    pub conditions: Vec<Condition>,
    /// `1 / (alpha1 alpha2)`; absent when the determinant vanishes.
    pub anticanonical_factor: Option<ComplexParam>,
    pub trace: ComplexParam,
    pub determinant: ComplexParam,
}

pub fn validate_primary(g: &HopfGermPrimary, tol: f64) -> PrimaryVerdict {
    let a1 = g.alpha1.norm_sqr();
    let a2 = g.alpha2.norm_sqr();
    let relation = g.alpha2.pow(g.m).sub(&g.alpha1).mul(&g.s);
    let conditions = vec![
        condition("alpha1_nonzero", Real::zero().lt(&a1), format!("|alpha1|^2 = {a1}")),
        condition("alpha1_le_alpha2", a1.le(&a2), format!("|alpha1|^2 = {a1}, |alpha2|^2 = {a2}")),
        condition("alpha2_lt_one", a2.lt(&Real::one()), format!("|alpha2|^2 = {a2}")),
        condition("resonance", relation.is_zero_within(tol), format!("(alpha2^m - alpha1) s = {relation}")),
    ];
    let determinant = g.alpha1.mul(&g.alpha2);
    PrimaryVerdict {
        valid: g.m > 0 && conditions.iter().all(|c| c.passed),
        conditions,
        anticanonical_factor: determinant.inv(),
        trace: g.alpha1.add(&g.alpha2),
        determinant,
    }
}

/// `F(z) = (t^n z1 z2^n + sum a_i t^(i+1) z2^(i+1), t z2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnokiGerm {
    pub t: ComplexParam,
    pub n: usize,
    pub a: Vec<ComplexParam>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnokiFlags {
    pub parabolic_inoue: bool,
    pub has_nac: bool,
    pub trace: ComplexParam,
}

/// The cycle of `n` rational curves of an Enoki surface (a nodal curve of
/// square zero for `n = 1`), plus the elliptic curve of square `-n` in the
/// parabolic case `a = 0`, where `-K = E + cycle`.
pub fn enoki_to_config(g: &EnokiGerm, tol: f64) -> Result<(CurveConfig, EnokiFlags)> {
    let n = g.n;
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    if g.a.len() != n {
        return Err(Error::Dimension { expected: n, found: g.a.len() });
    }
    let t2 = g.t.norm_sqr();
    if !(Real::zero().lt(&t2) && t2.lt(&Real::one())) {
        return Err(Error::Domain(format!("germ is not contracting: |t|^2 = {t2}")));
    }
    let parabolic = g.a.iter().all(|a| a.is_zero_within(tol));
    let mut curves = Vec::with_capacity(n + 1);
    let mut pairs = Vec::new();
    if n == 1 {
        curves.push(Curve::new(0, CurveKind::NodalRational, 0));
    } else {
        for i in 0..n as u32 {
            curves.push(Curve::new(i, CurveKind::SmoothRational, -2));
        }
        if n == 2 {
            pairs.push((0, 1, 2));
        } else {
            pairs.extend((0..n as u32).map(|i| (i, (i + 1) % n as u32, 1)));
        }
    }
    if parabolic {
        curves.push(Curve::new(n as u32, CurveKind::Elliptic, -(n as i64)));
    }
    let flags = EnokiFlags { parabolic_inoue: parabolic, has_nac: parabolic, trace: g.t.clone() };
    Ok((CurveConfig::new(n, curves, pairs), flags))
}
