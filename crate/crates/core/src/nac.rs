//! Numerically m-anticanonical divisors.
//!
//! A divisor `D_m = sum k_i D_i` supported on the configured curves is
//! numerically m-anticanonical when `D_m . D_j = -m K . D_j` for every curve,
//! which is the linear system `M k = -m (K . D_j)_j` over the intersection
//! matrix `M`. A genuine solution also satisfies `D_m^2 = m^2 K^2 = -m^2 b2`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::config::{adjunction_degree, cycle_square, CurveConfig, CurveKind};
use crate::error::{Error, Result};
use crate::families;
use crate::linalg::{self, is_negative_definite, Definiteness, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NacSolution {
    pub m: u64,
    /// Curve ids, in configuration order.
    pub curve_ids: Vec<u32>,
    #[serde(serialize_with = "crate::report::ser_ratios")]
    pub coeffs: Vec<BigRational>,
    /// Lcm of the denominators of the coefficients at `m = 1`.
    pub index: u64,
    /// All coefficients strictly positive.
    pub effective: bool,
    /// `k^T M k`.
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub self_int_check: BigRational,
    /// Set when the semidefinite special case produced the solution.
    pub note: Option<String>,
}

impl NacSolution {
    /// Coefficients divided by `m`, i.e. the `m = 1` divisor.
    pub fn unit_coeffs(&self) -> Vec<BigRational> {
        let m = BigRational::from_integer(BigInt::from(self.m));
        self.coeffs.iter().map(|k| k / &m).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|k| k.is_integer())
    }

    pub fn coeff_of(&self, id: u32) -> Option<&BigRational> {
        self.curve_ids.iter().position(|&c| c == id).map(|p| &self.coeffs[p])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum NoSolution {
    /// Singular intersection form outside the semidefinite special case.
    DegenerateForm,
    /// Invertible but not negative definite.
    NotNegativeDefinite,
    SelfIntersectionDefect {
        #[serde(serialize_with = "crate::report::ser_ratio")]
        computed: BigRational,
        #[serde(serialize_with = "crate::report::ser_bigint")]
        expected: BigInt,
    },
    /// Semidefinite form (a divisor of square zero): a NAC divisor exists only
    /// on a parabolic Inoue surface, which needs an elliptic curve.
    SemidefiniteNoNac { explanation: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NacOutcome {
    Solved(NacSolution),
    NoSolution(NoSolution),
}

impl NacOutcome {
    pub fn solution(&self) -> Option<&NacSolution> {
        match self {
            NacOutcome::Solved(s) => Some(s),
            NacOutcome::NoSolution(_) => None,
        }
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn lcm_of_denominators(coeffs: &[BigRational]) -> Result<u64> {
    let l = coeffs.iter().fold(BigInt::one(), |acc, k| acc.lcm(k.denom()));
    l.to_u64().ok_or(Error::Overflow("index"))
}

fn rhs_for(cfg: &CurveConfig, m: u64) -> Vec<BigInt> {
    let m = BigInt::from(m);
    cfg.curves().iter().map(|c| -(&m) * BigInt::from(adjunction_degree(c))).collect()
}

pub fn solve_nac(cfg: &CurveConfig, m: u64) -> Result<NacOutcome> {
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    let matrix = cfg.intersection_matrix()?;
    let expected = -BigInt::from(m) * BigInt::from(m) * BigInt::from(cfg.b2());
    let rhs = rhs_for(cfg, m);
    match is_negative_definite(&matrix)? {
        Definiteness::Definite => {}
        Definiteness::Semidefinite => return semidefinite_case(cfg, &matrix, m, &rhs, expected),
        Definiteness::Neither => {
            return Ok(NacOutcome::NoSolution(if matrix.determinant().is_zero() {
                NoSolution::DegenerateForm
            } else {
                NoSolution::NotNegativeDefinite
            }))
        }
    }
    let Some(coeffs) = linalg::solve(&matrix, &rhs)? else {
        return Ok(NacOutcome::NoSolution(NoSolution::DegenerateForm));
    };
    finish(cfg, &matrix, m, coeffs, expected, None)
}

fn finish(
    cfg: &CurveConfig,
    matrix: &IntMatrix,
    m: u64,
    coeffs: Vec<BigRational>,
    expected: BigInt,
    note: Option<String>,
) -> Result<NacOutcome> {
    let check = matrix.bilinear(&coeffs, &coeffs);
    if check != BigRational::from_integer(expected.clone()) {
        return Ok(NacOutcome::NoSolution(NoSolution::SelfIntersectionDefect { computed: check, expected }));
    }
    let mr = rat(m as i64);
    let unit: Vec<BigRational> = coeffs.iter().map(|k| k / &mr).collect();
    Ok(NacOutcome::Solved(NacSolution {
        m,
        curve_ids: cfg.curves().iter().map(|c| c.id).collect(),
        index: lcm_of_denominators(&unit)?,
        effective: coeffs.iter().all(|k| k.is_positive()),
        coeffs,
        self_int_check: check,
        note,
    }))
}

/// With a divisor of square zero the solution of the linear system is not
/// unique. The only surfaces of this kind carrying a NAC divisor are the
/// parabolic Inoue surfaces, where `-K = E + Gamma`: every curve appears with
/// coefficient `m`.
fn semidefinite_case(
    cfg: &CurveConfig,
    matrix: &IntMatrix,
    m: u64,
    rhs: &[BigInt],
    expected: BigInt,
) -> Result<NacOutcome> {
    if !cfg.curves().iter().any(|c| c.kind == CurveKind::Elliptic) {
        return Ok(NacOutcome::NoSolution(NoSolution::SemidefiniteNoNac {
            explanation: "a divisor of square zero is present and there is no elliptic curve: \
                          NAC exists iff the surface is parabolic Inoue"
                .into(),
        }));
    }
    let coeffs = vec![rat(m as i64); cfg.curves().len()];
    let image = matrix.apply(&coeffs);
    let residual_zero = image.iter().zip(rhs).all(|(a, b)| *a == BigRational::from_integer(b.clone()));
    if !residual_zero {
        return Ok(NacOutcome::NoSolution(NoSolution::SemidefiniteNoNac {
            explanation: "elliptic curve present but E + Gamma does not solve the system".into(),
        }));
    }
    finish(cfg, matrix, m, coeffs, expected, Some("parabolic Inoue: -K = E + Gamma".into()))
}

/// The index `m(S)`: `None` when no NAC divisor exists at `m = 1`.
pub fn index_of(cfg: &CurveConfig) -> Result<Option<u64>> {
    Ok(solve_nac(cfg, 1)?.solution().map(|s| s.index))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingratClosedForm {
    pub n: usize,
    pub p: usize,
    pub m: u64,
    #[serde(serialize_with = "crate::report::ser_ratios")]
    pub coeffs: Vec<BigRational>,
    /// `(-1)^(p+1) [(n-1)(p+1) - p]`.
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub det: BigInt,
    /// The closed-form divisor has square `-m^2 n`.
    pub consistent: bool,
    /// For `p = 0`: whether `m^2 n = k_0^2 (n-1)` has an integer solution.
    pub integer_equation_solvable: Option<bool>,
    pub det_matches_matrix: bool,
    pub coeffs_match_linear_solve: bool,
    /// `solve_nac` accepts exactly when the closed form is consistent, and
    /// then returns the closed-form coefficients.
    pub solver_agrees: bool,
}

pub fn singrat_coeffs(n: usize, p: usize, m: u64) -> Vec<BigRational> {
    let (n, p) = (n as i64, p as i64);
    let denom = (n - 1) * (p + 1) - p;
    (0..=p)
        .map(|i| BigRational::new(BigInt::from(m) * BigInt::from((n - 1) * (p + 1 - i)), BigInt::from(denom)))
        .collect()
}

pub fn singrat_det(n: usize, p: usize) -> BigInt {
    let (n, p) = (n as i64, p as i64);
    let v = BigInt::from((n - 1) * (p + 1) - p);
    if (p + 1) % 2 == 0 { v } else { -v }
}

fn is_square(v: &BigInt) -> bool {
    !v.is_negative() && {
        let r = v.sqrt();
        &r * &r == *v
    }
}

pub fn singrat_closed_form(n: usize, p: usize, m: u64) -> Result<SingratClosedForm> {
    if n < 2 || p > n - 1 || m == 0 {
        return Err(Error::Domain(format!("need n >= 2, 0 <= p <= n-1, m >= 1; got n={n}, p={p}, m={m}")));
    }
    let coeffs = singrat_coeffs(n, p, m);
    let det = singrat_det(n, p);
    let mb = BigInt::from(m);
    let target = -(&mb * &mb) * BigInt::from(n);
    // D_m . D_0 = -m (n-1); D_m . D_i = 0 otherwise.
    let square = &coeffs[0] * rat(-(m as i64) * (n as i64 - 1));
    let consistent = square == BigRational::from_integer(target);
    let integer_equation_solvable = (p == 0).then(|| {
        let lhs = &mb * &mb * BigInt::from(n);
        let d = BigInt::from(n - 1);
        lhs.is_multiple_of(&d) && is_square(&(lhs / d))
    });

    let cfg = families::singrat(n, p);
    let matrix = cfg.intersection_matrix()?;
    let det_matches_matrix = matrix.determinant() == det;
    let raw = linalg::solve(&matrix, &rhs_for(&cfg, m))?;
    let coeffs_match_linear_solve = raw.as_deref() == Some(coeffs.as_slice());
    let solver_agrees = match solve_nac(&cfg, m)? {
        NacOutcome::Solved(s) => consistent && s.coeffs == coeffs,
        NacOutcome::NoSolution(_) => !consistent,
    };
    Ok(SingratClosedForm {
        n,
        p,
        m,
        coeffs,
        det,
        consistent,
        integer_equation_solvable,
        det_matches_matrix,
        coeffs_match_linear_solve,
        solver_agrees,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarCheck {
    pub curve: u32,
    pub neighbors: Vec<u32>,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub lhs: BigRational,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub rhs: BigRational,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub checks: Vec<StarCheck>,
    pub violations: Vec<u32>,
}

/// Checks `sum_j (u_j - 1) = (u_i - 1)(-D_i^2)` at every smooth rational curve
/// meeting the rest of the configuration with total multiplicity two (an
/// interior curve of a cycle or chain without further branches), where
/// `u = k / m` are the unit-normalised coefficients.
pub fn verify_star_recurrence(cfg: &CurveConfig, sol: &NacSolution) -> StarReport {
    let unit = sol.unit_coeffs();
    let one = BigRational::one();
    let mut checks = Vec::new();
    for (i, c) in cfg.curves().iter().enumerate() {
        if c.kind != CurveKind::SmoothRational {
            continue;
        }
        let nbrs: Vec<(usize, u32)> = cfg
            .curves()
            .iter()
            .enumerate()
            .filter_map(|(j, d)| {
                let m = cfg.mult(c.id, d.id);
                (m > 0).then_some((j, m))
            })
            .collect();
        if nbrs.iter().map(|&(_, m)| m).sum::<u32>() != 2 {
            continue;
        }
        let lhs = nbrs.iter().fold(BigRational::zero(), |acc, &(j, m)| {
            acc + (&unit[j] - &one) * rat(i64::from(m))
        });
        let rhs = (&unit[i] - &one) * rat(-c.self_int);
        checks.push(StarCheck {
            curve: c.id,
            neighbors: nbrs.iter().map(|&(j, _)| cfg.curves()[j].id).collect(),
            holds: lhs == rhs,
            lhs,
            rhs,
        });
    }
    let violations = checks.iter().filter(|c| !c.holds).map(|c| c.curve).collect();
    StarReport { checks, violations }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CycleVerdict {
    /// Every cycle coefficient equals the unit and the cycle has no branch.
    InoueIhSignature,
    /// All cycle coefficients exceed the unit and the maximum sits on a root.
    MaxAtRoot { root: u32 },
    Violation { message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleStructure {
    pub members: Vec<u32>,
    pub square: i64,
    #[serde(serialize_with = "crate::report::ser_ratios")]
    pub unit_coeffs: Vec<BigRational>,
    pub verdict: CycleVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub effective: bool,
    pub cycles: Vec<CycleStructure>,
}

impl StructureReport {
    pub fn violations(&self) -> impl Iterator<Item = &CycleStructure> {
        self.cycles.iter().filter(|c| matches!(c.verdict, CycleVerdict::Violation { .. }))
    }
}

/// Structural laws of a NAC divisor along each cycle: a unit coefficient on a
/// cycle forces all of them to be units and the cycle to be branch-free;
/// otherwise the cycle has a branch and the largest coefficient sits at a
/// root.
pub fn nac_structure_report(cfg: &CurveConfig, sol: &NacSolution) -> Result<StructureReport> {
    let analysis = cfg.find_cycles()?;
    let unit = sol.unit_coeffs();
    let one = BigRational::one();
    let mut cycles = Vec::new();
    for cycle in &analysis.cycles {
        let coeffs: Vec<BigRational> = cycle
            .members
            .iter()
            .map(|&id| {
                let pos = cfg.position(id).expect("cycle member is a configured curve");
                unit[pos].clone()
            })
            .collect();
        let verdict = if coeffs.contains(&one) {
            if coeffs.iter().all(|u| *u == one) && !cycle.has_branch() {
                CycleVerdict::InoueIhSignature
            } else {
                CycleVerdict::Violation {
                    message: "a unit cycle coefficient requires all cycle coefficients to be units \
                              and the cycle to be branch-free"
                        .into(),
                }
            }
        } else if !cycle.has_branch() {
            CycleVerdict::Violation {
                message: "no cycle coefficient is a unit, yet the cycle has no branch".into(),
            }
        } else {
            let max = coeffs.iter().max().expect("cycles are nonempty");
            let root = cycle
                .members
                .iter()
                .zip(&coeffs)
                .find(|(id, u)| *u == max && cycle.is_root(**id))
                .map(|(id, _)| *id);
            match root {
                Some(root) => CycleVerdict::MaxAtRoot { root },
                None => CycleVerdict::Violation {
                    message: "the maximal cycle coefficient is not attained at a branch root".into(),
                },
            }
        };
        cycles.push(CycleStructure {
            members: cycle.members.clone(),
            square: cycle_square(cfg, cycle),
            unit_coeffs: coeffs,
            verdict,
        });
    }
    Ok(StructureReport { effective: sol.effective, cycles })
}
