//! Configuration files and the JSON reports produced by the `vii` commands.
//!
//! Every rational in a report is a string `"p/q"` (or `"p"` when integral).

use std::path::Path;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::config::{Curve, CurveConfig};
use crate::enumerate::{self, Representation, DEFAULT_CAP};
use crate::error::Error;
use crate::germ::{self, ComplexParam, EnokiGerm, HopfGermPrimary, HopfGermStrong, DEFAULT_TOLERANCE};
use crate::linalg::is_negative_definite;
use crate::nac::{self, NacOutcome, NacSolution};

/// Renders a rational as `"p/q"`, or `"p"` when integral.
pub fn ratio_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

pub fn ser_ratios<S: Serializer>(rs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(rs.iter().map(ratio_string))
}

pub fn ser_ratio64<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    if r.is_integer() {
        s.serialize_str(&r.numer().to_string())
    } else {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }
}

pub fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Process exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exit {
    Ok = 0,
    InvalidInput = 1,
    Inconsistent = 2,
    CapRefused = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// A command result: the report for standard output, an optional message for
/// standard error, and the exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Option<Value>,
    pub error: Option<String>,
    pub exit: Exit,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Self { report: Some(report), error: None, exit: Exit::Ok }
    }

    fn with_exit(report: Value, exit: Exit, error: impl Into<String>) -> Self {
        Self { report: Some(report), error: Some(error.into()), exit }
    }

    fn fail(exit: Exit, error: impl Into<String>) -> Self {
        Self { report: None, error: Some(error.into()), exit }
    }

    fn from_error(e: &Error) -> Self {
        let exit = match e {
            Error::CapExceeded { .. } => Exit::CapRefused,
            _ => Exit::InvalidInput,
        };
        Self::fail(exit, e.to_string())
    }
}

/// On-disk form of a [`CurveConfig`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub b2: usize,
    pub curves: Vec<Curve>,
    #[serde(default)]
    pub intersections: Vec<(u32, u32, u32)>,
}

impl ConfigFile {
    /// Parse errors carry the line and column reported by the JSON reader.
    pub fn parse(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("parse error: {e}"))
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn from_config(cfg: &CurveConfig) -> Self {
        Self { b2: cfg.b2(), curves: cfg.curves().to_vec(), intersections: cfg.entries().to_vec() }
    }

    pub fn to_config(&self) -> CurveConfig {
        CurveConfig::new(self.b2, self.curves.clone(), self.intersections.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// The enumeration cap, overridable through `VII_ENUM_CAP`.
pub fn cap_from_env() -> Result<usize, String> {
    match std::env::var("VII_ENUM_CAP") {
        Ok(v) => v.trim().parse().map_err(|_| format!("VII_ENUM_CAP must be a nonnegative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

/// Reads and validates a configuration file. On failure the outcome to
/// return is given instead.
fn load(path: &Path) -> Result<(CurveConfig, Value), Outcome> {
    let file = ConfigFile::read(path).map_err(|e| Outcome::fail(Exit::InvalidInput, e))?;
    validated(file.to_config())
}

/// Validates an in-memory configuration, returning it with its validation
/// section, or the invalid-input outcome.
pub fn validated(cfg: CurveConfig) -> Result<(CurveConfig, Value), Outcome> {
    let validation = cfg.validate();
    let section = serde_json::to_value(&validation).expect("serializable");
    if !validation.valid {
        let msg = validation.issues.iter().map(|i| i.message.clone()).collect::<Vec<_>>().join("; ");
        return Err(Outcome::with_exit(
            json!({ "validation": section }),
            Exit::InvalidInput,
            format!("invalid configuration: {msg}"),
        ));
    }
    Ok((cfg, section))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn error_value(e: &Error) -> Value {
    json!({ "error": e.to_string() })
}

fn nac_section(sol: &NacSolution) -> Value {
    json!({
        "m": sol.m,
        "curve_ids": sol.curve_ids,
        "coeffs": sol.coeffs.iter().map(ratio_string).collect::<Vec<_>>(),
        "index": sol.index,
        "effective": sol.effective,
        "self_int_check": ratio_string(&sol.self_int_check),
        "note": sol.note,
    })
}

/// Independent recheck of an accepted solution: `M k = -m (K . D)` and
/// `k^T M k = -m^2 b2`.
fn recheck(cfg: &CurveConfig, sol: &NacSolution) -> Result<(), String> {
    let m = cfg.intersection_matrix().map_err(|e| e.to_string())?;
    let mm = BigInt::from(sol.m);
    let image = m.apply(&sol.coeffs);
    for (c, v) in cfg.curves().iter().zip(&image) {
        let want = -(&mm) * BigInt::from(crate::config::adjunction_degree(c));
        if *v != BigRational::from_integer(want) {
            return Err(format!("curve {}: (M k) = {} disagrees with -m K.D", c.id, ratio_string(v)));
        }
    }
    let want = -(&mm * &mm) * BigInt::from(cfg.b2());
    if m.bilinear(&sol.coeffs, &sol.coeffs) != BigRational::from_integer(want) {
        return Err("k^T M k differs from -m^2 b2".into());
    }
    Ok(())
}

fn nac_outcome_section(cfg: &CurveConfig, outcome: &NacOutcome) -> Result<Value, String> {
    match outcome {
        NacOutcome::Solved(sol) => {
            recheck(cfg, sol)?;
            Ok(nac_section(sol))
        }
        NacOutcome::NoSolution(reason) => Ok(json!({ "status": "no_solution", "reason": to_value(reason) })),
    }
}

/// Full pipeline: validation, matrix, definiteness, cycles, sigma verdict,
/// NAC divisor at `m = 1` and at the index, structure laws.
pub fn cmd_classify(path: &Path) -> Outcome {
    let (cfg, validation) = match load(path) {
        Ok(v) => v,
        Err(o) => return o,
    };
    classify_config(&cfg, validation)
}

pub fn classify_config(cfg: &CurveConfig, validation: Value) -> Outcome {
    let matrix = match cfg.intersection_matrix() {
        Ok(m) => m,
        Err(e) => return Outcome::from_error(&e),
    };
    let definiteness = is_negative_definite(&matrix).map(|d| to_value(&d)).unwrap_or_else(|e| error_value(&e));
    let cycles = cfg.find_cycles().map(|c| to_value(&c)).unwrap_or_else(|e| error_value(&e));
    let sigma = cfg.sigma_classify().map(|s| to_value(&s)).unwrap_or_else(|e| error_value(&e));
    let mut report = json!({
        "validation": validation,
        "matrix": matrix.rows(),
        "determinant": matrix.determinant().to_string(),
        "definiteness": definiteness,
        "cycles": cycles,
        "sigma_classification": sigma,
    });
    let at_one = match nac::solve_nac(cfg, 1) {
        Ok(o) => o,
        Err(e) => {
            report["nac"] = error_value(&e);
            return Outcome::ok(report);
        }
    };
    match nac_outcome_section(cfg, &at_one) {
        Ok(v) => report["nac"] = v,
        Err(e) => return Outcome::with_exit(report, Exit::Inconsistent, e),
    }
    if let NacOutcome::Solved(sol) = &at_one {
        report["index"] = json!(sol.index);
        match nac::solve_nac(cfg, sol.index).map_err(|e| e.to_string()).and_then(|o| {
            let v = nac_outcome_section(cfg, &o)?;
            Ok((o, v))
        }) {
            Ok((o, v)) => {
                report["nac_at_index"] = v;
                if let Some(s) = o.solution() {
                    report["integral_at_index"] = json!(s.is_integral());
                }
            }
            Err(e) => return Outcome::with_exit(report, Exit::Inconsistent, e),
        }
        report["structure"] = nac::nac_structure_report(cfg, sol).map(|s| to_value(&s)).unwrap_or_else(|e| error_value(&e));
        report["star_recurrence"] = to_value(&nac::verify_star_recurrence(cfg, sol));
    } else {
        report["index"] = Value::Null;
    }
    Outcome::ok(report)
}

pub fn cmd_nac(path: &Path, m: u64) -> Outcome {
    match load(path) {
        Ok((cfg, validation)) => nac_config(&cfg, validation, m),
        Err(o) => o,
    }
}

pub fn nac_config(cfg: &CurveConfig, validation: Value, m: u64) -> Outcome {
    let outcome = match nac::solve_nac(cfg, m) {
        Ok(o) => o,
        Err(e) => return Outcome::from_error(&e),
    };
    let mut report = json!({ "validation": validation });
    match nac_outcome_section(cfg, &outcome) {
        Ok(v) => report["nac"] = v,
        Err(e) => return Outcome::with_exit(report, Exit::Inconsistent, e),
    }
    if let NacOutcome::Solved(sol) = &outcome {
        report["structure"] = nac::nac_structure_report(cfg, sol).map(|s| to_value(&s)).unwrap_or_else(|e| error_value(&e));
        report["star_recurrence"] = to_value(&nac::verify_star_recurrence(cfg, sol));
    }
    Outcome::ok(report)
}

pub fn cmd_index(path: &Path) -> Outcome {
    match load(path) {
        Ok((cfg, validation)) => index_config(&cfg, validation),
        Err(o) => o,
    }
}

pub fn index_config(cfg: &CurveConfig, validation: Value) -> Outcome {
    match nac::solve_nac(cfg, 1) {
        Ok(NacOutcome::Solved(sol)) => match recheck(cfg, &sol) {
            Ok(()) => Outcome::ok(json!({ "validation": validation, "index": sol.index })),
            Err(e) => Outcome::with_exit(json!({ "validation": validation }), Exit::Inconsistent, e),
        },
        Ok(NacOutcome::NoSolution(reason)) => {
            Outcome::ok(json!({ "validation": validation, "index": Value::Null, "reason": to_value(&reason) }))
        }
        Err(e) => Outcome::from_error(&e),
    }
}

fn representation_value(rep: &Representation, checks: &enumerate::VerifyReport) -> Value {
    json!({
        "torsion": rep.torsion,
        "classes": rep.assignments.iter().map(|a| json!({
            "curve": a.curve,
            "class": a.class.to_string(),
            "coeffs": a.class.coeffs(),
            "torsion2": a.class.torsion2(),
            "form": to_value(&a.form),
        })).collect::<Vec<_>>(),
        "verification": to_value(&checks.checks),
    })
}

pub fn cmd_enumerate(path: &Path, max_solutions: Option<usize>, cap: usize) -> Outcome {
    let (cfg, validation) = match load(path) {
        Ok(v) => v,
        Err(o) => return o,
    };
    enumerate_config(&cfg, validation, max_solutions, cap)
}

pub fn enumerate_config(cfg: &CurveConfig, validation: Value, max_solutions: Option<usize>, cap: usize) -> Outcome {
    let result = match enumerate::enumerate(cfg, cap, max_solutions) {
        Ok(r) => r,
        Err(e @ Error::CapExceeded { .. }) => {
            return Outcome::fail(Exit::CapRefused, format!("refused: {e}; raise VII_ENUM_CAP to override"))
        }
        Err(e) => return Outcome::from_error(&e),
    };
    let mut reps = Vec::new();
    let mut inconsistent = None;
    for rep in &result.representations {
        match enumerate::verify(cfg, rep) {
            Ok(checks) => {
                if !checks.all_pass() {
                    inconsistent = Some("an emitted representation fails verification".to_string());
                }
                reps.push(representation_value(rep, &checks));
            }
            Err(e) => inconsistent = Some(e.to_string()),
        }
    }
    let type_b = enumerate::type_b_exclusion_check(cfg).map(|r| to_value(&r)).unwrap_or_else(|e| error_value(&e));
    let report = json!({
        "validation": validation,
        "count": reps.len(),
        "truncated": result.truncated,
        "max_solutions": max_solutions,
        "torsion_phase": result.torsion_phase,
        "two_cycle_rule": result.two_cycle_rule,
        "representations": reps,
        "type_b_check": type_b,
    });
    match inconsistent {
        Some(e) => Outcome::with_exit(report, Exit::Inconsistent, e),
        None => Outcome::ok(report),
    }
}

fn parse_params(params: &[String]) -> Result<Vec<(String, String)>, String> {
    params
        .iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| format!("parameter {p:?} is not key=value"))
        })
        .collect()
}

struct Params(Vec<(String, String)>);

impl Params {
    fn raw(&self, key: &str) -> Option<&str> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn complex(&self, key: &str) -> Result<ComplexParam, String> {
        let v = self.raw(key).ok_or_else(|| format!("missing parameter {key}"))?;
        v.parse().map_err(|e: Error| format!("{key}: {e}"))
    }

    fn complex_or_zero(&self, key: &str) -> Result<ComplexParam, String> {
        if self.raw(key).is_some() { self.complex(key) } else { Ok(ComplexParam::from_ratio(0, 1)) }
    }

    fn uint(&self, key: &str) -> Result<u64, String> {
        let v = self.raw(key).ok_or_else(|| format!("missing parameter {key}"))?;
        v.parse().map_err(|_| format!("{key}: expected a nonnegative integer, got {v:?}"))
    }

    fn tolerance(&self) -> Result<f64, String> {
        match self.raw("tol") {
            Some(v) => v.parse().ok().filter(|t: &f64| *t >= 0.0).ok_or_else(|| format!("tol: bad value {v:?}")),
            None => Ok(DEFAULT_TOLERANCE),
        }
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), String> {
        match self.0.iter().find(|(k, _)| !allowed.contains(&k.as_str()) && k != "tol") {
            Some((k, _)) => Err(format!("unknown parameter {k}")),
            None => Ok(()),
        }
    }
}

/// Germ verdicts. For `enoki` the derived configuration is embedded as a
/// config-file document and optionally written to `out`.
pub fn cmd_germ(kind: &str, params: &[String], out: Option<&Path>) -> Outcome {
    match germ_report(kind, params, out) {
        Ok(v) => Outcome::ok(v),
        Err(e) => Outcome::fail(Exit::InvalidInput, e),
    }
}

fn germ_report(kind: &str, params: &[String], out: Option<&Path>) -> Result<Value, String> {
    let p = Params(parse_params(params)?);
    let tol = p.tolerance()?;
    let m = |p: &Params| -> Result<u32, String> {
        let m = p.uint("m")?;
        u32::try_from(m).ok().filter(|&m| m > 0).ok_or_else(|| format!("m: expected a positive integer, got {m}"))
    };
    match kind {
        "hopf-strong" => {
            p.check_keys(&["alpha", "a", "s", "m"])?;
            let g = HopfGermStrong { alpha: p.complex("alpha")?, a: p.complex("a")?, s: p.complex_or_zero("s")?, m: m(&p)? };
            let v = germ::validate_strong(&g, tol);
            Ok(json!({
                "kind": kind,
                "verdict": to_value(&v),
                "note": "the inequality chain orders a as a real number; a_real_positive reports whether a is a positive real",
            }))
        }
        "hopf-primary" => {
            p.check_keys(&["alpha1", "alpha2", "s", "m"])?;
            let g = HopfGermPrimary {
                alpha1: p.complex("alpha1")?,
                alpha2: p.complex("alpha2")?,
                s: p.complex_or_zero("s")?,
                m: m(&p)?,
            };
            Ok(json!({ "kind": kind, "verdict": to_value(&germ::validate_primary(&g, tol)) }))
        }
        "enoki" => {
            p.check_keys(&["t", "n", "a"])?;
            let n = usize::try_from(p.uint("n")?).map_err(|_| "n: too large".to_string())?;
            let a = match p.raw("a") {
                Some(list) => list
                    .split(',')
                    .map(|x| x.parse::<ComplexParam>().map_err(|e| format!("a: {e}")))
                    .collect::<Result<Vec<_>, _>>()?,
                None => vec![ComplexParam::from_ratio(0, 1); n],
            };
            let g = EnokiGerm { t: p.complex("t")?, n, a };
            let (cfg, flags) = germ::enoki_to_config(&g, tol).map_err(|e| e.to_string())?;
            let file = ConfigFile::from_config(&cfg);
            if let Some(out) = out {
                std::fs::write(out, file.to_json() + "\n").map_err(|e| format!("{}: {e}", out.display()))?;
            }
            let sigma = cfg.sigma_classify().map(|s| to_value(&s)).unwrap_or_else(|e| error_value(&e));
            Ok(json!({
                "kind": kind,
                "flags": to_value(&flags),
                "sigma_classification": sigma,
                "config": to_value(&file),
            }))
        }
        other => Err(format!("unknown germ kind {other:?}; expected hopf-strong, hopf-primary or enoki")),
    }
}
