//! Built-in verification suites run by `vii selftest`. Randomised suites draw
//! from a ChaCha generator seeded by the caller, so runs are reproducible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{CurveConfig, SigmaVerdict};
use crate::enumerate::{enumerate, Representation, DEFAULT_CAP};
use crate::families;
use crate::germ::{enoki_to_config, ComplexParam, EnokiGerm};
use crate::lattice::{intersect, LatticeClass};
use crate::linalg::{is_negative_definite, Definiteness, IntMatrix};
use crate::nac::{self, NacOutcome, NacSolution, NoSolution};
use crate::oracle;

pub const DEFAULT_SEED: u64 = 20070;

pub const SUITES: [&str; 11] = [
    "determinant-formula",
    "singrat-closed-form-grid",
    "singrat-worked-instance",
    "self-intersection-law",
    "p0-impossibility",
    "enumerator-oracle-equivalence",
    "sharp-cb2-law",
    "singrat-representation-uniqueness",
    "enoki-germ-pipeline",
    "star-recurrence",
    "definiteness-oracle",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub suites: Vec<SuiteResult>,
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
        if !ok && self.failures.len() == 20 {
            self.failures.push("further failures suppressed".into());
        }
    }

    fn finish(self, name: &'static str) -> SuiteResult {
        SuiteResult { name, passed: self.failures.is_empty() && self.checks > 0, checks: self.checks, failures: self.failures }
    }
}

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

pub fn run_all(seed: u64) -> SelftestReport {
    let suites: Vec<SuiteResult> = SUITES.iter().map(|name| run_suite(name, seed).expect("known suite")).collect();
    let passed = suites.iter().filter(|s| s.passed).count();
    SelftestReport { seed, passed, failed: suites.len() - passed, suites }
}

pub fn run_suite(name: &str, seed: u64) -> Option<SuiteResult> {
    let name = *SUITES.iter().find(|s| **s == name)?;
    let mut t = Tally::default();
    match name {
        "determinant-formula" => determinant_formula(&mut t),
        "singrat-closed-form-grid" => closed_form_grid(&mut t),
        "singrat-worked-instance" => worked_instance(&mut t),
        "self-intersection-law" => self_intersection_law(&mut t, seed),
        "p0-impossibility" => p0_impossibility(&mut t),
        "enumerator-oracle-equivalence" => oracle_equivalence(&mut t, seed),
        "sharp-cb2-law" => sharp_law(&mut t),
        "singrat-representation-uniqueness" => singrat_uniqueness(&mut t),
        "enoki-germ-pipeline" => enoki_pipeline(&mut t),
        "star-recurrence" => star_recurrence(&mut t, seed),
        "definiteness-oracle" => definiteness_oracle(&mut t, seed),
        _ => unreachable!(),
    }
    Some(t.finish(name))
}

fn determinant_formula(t: &mut Tally) {
    for n in 2..=10 {
        for p in 0..n {
            let m = families::singrat(n, p).intersection_matrix().expect("valid family");
            let want = nac::singrat_det(n, p);
            let cof = BigInt::from(oracle::cofactor_determinant(&m));
            t.check(cof == want && m.determinant() == want, || format!("n={n} p={p}: cofactor {cof}, formula {want}"));
        }
    }
}

fn closed_form_grid(t: &mut Tally) {
    for n in 2..=10 {
        let p = n - 1;
        for m in [1, n as u64 - 1] {
            let want = nac::singrat_coeffs(n, p, m);
            let got = nac::solve_nac(&families::singrat(n, p), m).ok().and_then(|o| o.solution().map(|s| s.coeffs.clone()));
            t.check(got.as_ref() == Some(&want), || format!("n={n} m={m}: solver {got:?}"));
            let cf = nac::singrat_closed_form(n, p, m);
            t.check(
                cf.as_ref().is_ok_and(|c| c.consistent && c.solver_agrees && c.coeffs_match_linear_solve),
                || format!("n={n} m={m}: closed form record {cf:?}"),
            );
        }
        let idx = nac::index_of(&families::singrat(n, p));
        t.check(idx == Ok(Some(n as u64 - 1)), || format!("n={n}: index {idx:?}"));
    }
}

fn worked_instance(t: &mut Tally) {
    let cfg = families::singrat(3, 2);
    let m = cfg.intersection_matrix().expect("valid");
    t.check(m.determinant() == BigInt::from(-4), || format!("det {}", m.determinant()));
    for (mult, want) in [(1u64, vec![rat(3, 2), rat(1, 1), rat(1, 2)]), (2, vec![rat(3, 1), rat(2, 1), rat(1, 1)])] {
        match nac::solve_nac(&cfg, mult) {
            Ok(NacOutcome::Solved(s)) => {
                t.check(s.coeffs == want, || format!("m={mult}: {:?}", s.coeffs));
                let sq = m.bilinear(&s.coeffs, &s.coeffs);
                t.check(sq == rat(-3 * (mult * mult) as i64, 1), || format!("m={mult}: square {sq}"));
            }
            other => t.check(false, || format!("m={mult}: {other:?}")),
        }
    }
}

/// Negative definite configurations of at most six curves. Half are built
/// from lattice classes with `count = b2`, so that a NAC divisor exists; the
/// rest are arbitrary graphs filtered on definiteness.
pub fn random_definite_configs(seed: u64, count: usize) -> Vec<CurveConfig> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let cfg = if out.len() % 2 == 0 {
            let n = rng.gen_range(2..=6);
            match families::random_lattice_config(&mut rng, n, n, 50) {
                Some(c) => c,
                None => continue,
            }
        } else {
            families::random_config(&mut rng, 6)
        };
        let definite = cfg
            .intersection_matrix()
            .ok()
            .and_then(|m| is_negative_definite(&m).ok())
            .is_some_and(|d| d == Definiteness::Definite);
        if definite && cfg.validate().valid {
            out.push(cfg);
        }
    }
    out
}

fn accepted_solutions(seed: u64) -> Vec<(CurveConfig, NacSolution)> {
    let mut out = Vec::new();
    for cfg in random_definite_configs(seed, 1000) {
        for m in [1, 2] {
            if let Ok(NacOutcome::Solved(s)) = nac::solve_nac(&cfg, m) {
                out.push((cfg.clone(), s));
            }
        }
    }
    out
}

fn self_intersection_law(t: &mut Tally, seed: u64) {
    let sols = accepted_solutions(seed);
    t.check(sols.len() >= 500, || format!("only {} accepted solutions", sols.len()));
    for (cfg, s) in &sols {
        let m = cfg.intersection_matrix().expect("valid");
        let sq = m.bilinear(&s.coeffs, &s.coeffs);
        let want = BigRational::from_integer(-BigInt::from(s.m * s.m) * BigInt::from(cfg.b2()));
        t.check(sq == want, || format!("square {sq}, expected {want}"));
        t.check(s.coeffs.iter().all(|k| !k.is_negative()), || format!("negative coefficient in {:?}", s.coeffs));
    }
}

fn p0_impossibility(t: &mut Tally) {
    for n in 2..=10 {
        let r = nac::singrat_closed_form(n, 0, 1);
        t.check(
            r.as_ref().is_ok_and(|c| !c.consistent && c.integer_equation_solvable == Some(false) && c.solver_agrees),
            || format!("n={n}: {r:?}"),
        );
        let out = nac::solve_nac(&families::singrat(n, 0), 1);
        t.check(
            matches!(out, Ok(NacOutcome::NoSolution(NoSolution::SelfIntersectionDefect { .. }))),
            || format!("n={n}: solver {out:?}"),
        );
    }
}

/// Fixture set for the oracle comparison: the named fixtures of rank at most
/// four plus random lattice configurations.
pub fn small_fixtures(seed: u64) -> Vec<(String, CurveConfig)> {
    let mut out: Vec<_> = families::enumerator_fixtures().into_iter().filter(|(_, c)| c.b2() <= 4).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut k = 0;
    while k < 8 {
        let n = rng.gen_range(2..=4);
        if let Some(cfg) = families::random_lattice_config(&mut rng, n, n, 50) {
            out.push((format!("random-{k}"), cfg));
            k += 1;
        }
    }
    out
}

fn oracle_equivalence(t: &mut Tally, seed: u64) {
    for (name, cfg) in small_fixtures(seed) {
        let fast = enumerate(&cfg, DEFAULT_CAP, None).map(|e| e.representations);
        let slow = oracle::brute_force_enumerate(&cfg);
        t.check(fast == slow, || format!("{name}: pruned {fast:?} vs brute force {slow:?}"));
    }
}

/// `#C - C^2` for every cycle, computed directly from the classes.
pub fn cycle_laws(cfg: &CurveConfig, rep: &Representation) -> Vec<i64> {
    let Ok(analysis) = cfg.find_cycles() else { return vec![] };
    analysis
        .rational_cycles()
        .map(|c| {
            let n = cfg.b2();
            let sum = c.members.iter().fold(LatticeClass::zero(n).expect("rank"), |acc, id| {
                acc.checked_add(rep.class_of(*id).expect("assigned")).expect("small")
            });
            c.members.len() as i64 - intersect(&sum, &sum).expect("rank")
        })
        .collect()
}

fn sharp_law(t: &mut Tally) {
    for (name, cfg) in families::enumerator_fixtures() {
        let Ok(e) = enumerate(&cfg, DEFAULT_CAP, None) else {
            t.check(false, || format!("{name}: enumeration failed"));
            continue;
        };
        for rep in &e.representations {
            let want = if rep.torsion { 2 * cfg.b2() as i64 } else { cfg.b2() as i64 };
            let laws = cycle_laws(&cfg, rep);
            t.check(!laws.is_empty() && laws.iter().all(|&v| v == want), || format!("{name}: {laws:?}, expected {want}"));
        }
    }
    let e = enumerate(&families::rational_cycle(&[-3, -3, -3]), DEFAULT_CAP, None);
    t.check(e.as_ref().is_ok_and(|e| e.torsion_phase && !e.representations.is_empty()), || {
        "odd fixture did not produce a torsion representation".into()
    });
}

fn singrat_uniqueness(t: &mut Tally) {
    for n in 2..=4 {
        let e = enumerate(&families::singrat(n, n - 1), DEFAULT_CAP, None);
        let Ok(e) = e else {
            t.check(false, || format!("n={n}: {e:?}"));
            continue;
        };
        t.check(e.representations.len() == 1, || format!("n={n}: {} representations", e.representations.len()));
        let Some(rep) = e.representations.first() else { continue };
        let mut d0 = vec![-1; n];
        d0[0] = 0;
        t.check(rep.assignments[0].class.coeffs() == d0.as_slice(), || format!("n={n}: D0 = {}", rep.assignments[0].class));
        for i in 1..n {
            let mut di = vec![0; n];
            di[i] = 1;
            di[i - 1] = -1;
            let got = rep.assignments[i].class.coeffs();
            t.check(got == di.as_slice(), || format!("n={n}: D{i} = {}", rep.assignments[i].class));
        }
    }
}

fn enoki_pipeline(t: &mut Tally) {
    for n in 1..=6 {
        for parabolic in [true, false] {
            let a: Vec<ComplexParam> = (0..n)
                .map(|i| ComplexParam::from_ratio(i64::from(!parabolic && i == 0), 1))
                .collect();
            let g = EnokiGerm { t: ComplexParam::from_ratio(1, 2), n, a };
            let Ok((cfg, flags)) = enoki_to_config(&g, 0.0) else {
                t.check(false, || format!("n={n}: conversion failed"));
                continue;
            };
            let s = cfg.sigma_classify();
            t.check(
                s.as_ref().is_ok_and(|s| s.sigma == 2 * n as i64 && s.verdict == SigmaVerdict::EnokiClass),
                || format!("n={n}: sigma {s:?}"),
            );
            t.check(flags.parabolic_inoue == parabolic, || format!("n={n}: parabolic flag"));
            let out = nac::solve_nac(&cfg, 1);
            let solved = matches!(out, Ok(NacOutcome::Solved(_)));
            let special = match &out {
                Ok(NacOutcome::Solved(s)) => s.note.is_some(),
                Ok(NacOutcome::NoSolution(NoSolution::SemidefiniteNoNac { .. })) => true,
                _ => false,
            };
            t.check(solved == flags.has_nac && special, || format!("n={n} parabolic={parabolic}: {out:?}"));
        }
    }
}

fn star_recurrence(t: &mut Tally, seed: u64) {
    let mut interior = 0;
    for (cfg, s) in accepted_solutions(seed) {
        let r = nac::verify_star_recurrence(&cfg, &s);
        interior += r.checks.len();
        t.check(r.violations.is_empty(), || format!("violations at {:?}", r.violations));
    }
    t.check(interior > 0, || "no interior curves exercised".into());
}

fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n);
    let negative_diagonal = rng.gen_bool(0.5);
    for i in 0..n {
        for j in i..n {
            let v = if i == j && negative_diagonal { rng.gen_range(-4..=0) } else { rng.gen_range(-4..=4) };
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }
    m
}

fn definiteness_oracle(t: &mut Tally, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdef1);
    let mut seen = [0usize; 3];
    let mut compare = |t: &mut Tally, m: &IntMatrix| {
        let fast = is_negative_definite(m).expect("symmetric");
        let slow = oracle::definiteness_by_principal_minors(m);
        seen[fast as usize] += 1;
        t.check(fast == slow, || format!("{m}: checker {fast:?}, oracle {slow:?}"));
    };
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=4);
        compare(t, &random_symmetric(&mut rng, n));
    }
    for _ in 0..500 {
        compare(t, &random_symmetric(&mut rng, 8));
    }
    t.check(seen.iter().all(|&c| c > 0), || format!("verdict coverage {seen:?}"));
}
