//! Standard configurations and random generators used by tests, fixtures and
//! the self-test suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::config::{Curve, CurveConfig, CurveKind};
use crate::lattice::{intersect, IndexSet, LatticeClass};

/// A nodal curve `D_0` of square `-(n-1)` followed by a chain `D_1, ..., D_p`
/// of (-2)-curves, with `b2 = n`.
pub fn singrat(n: usize, p: usize) -> CurveConfig {
    let mut curves = vec![Curve::new(0, CurveKind::NodalRational, -(n as i64 - 1))];
    let mut pairs = Vec::new();
    for i in 1..=p as u32 {
        curves.push(Curve::new(i, CurveKind::SmoothRational, -2));
        pairs.push((i - 1, i, 1));
    }
    CurveConfig::new(n, curves, pairs)
}

/// A cycle of rational curves with the given self-intersections and
/// `b2 = len`: a nodal curve for one entry, two curves meeting twice for two,
/// a ring otherwise.
pub fn rational_cycle(self_ints: &[i64]) -> CurveConfig {
    let n = self_ints.len();
    if n == 1 {
        return CurveConfig::new(1, vec![Curve::new(0, CurveKind::NodalRational, self_ints[0])], vec![]);
    }
    let curves = self_ints
        .iter()
        .enumerate()
        .map(|(i, &s)| Curve::new(i as u32, CurveKind::SmoothRational, s))
        .collect();
    let pairs = if n == 2 {
        vec![(0, 1, 2)]
    } else {
        (0..n as u32).map(|i| (i, (i + 1) % n as u32, 1)).collect()
    };
    CurveConfig::new(n, curves, pairs)
}

/// Configuration realised by the given classes: smooth rational curves whose
/// self-intersections and pairwise multiplicities are the lattice products.
/// `None` when some pairwise product is negative or a class does not have the
/// self-intersection of a smooth rational curve on a minimal surface.
pub fn config_from_classes(classes: &[LatticeClass]) -> Option<CurveConfig> {
    let n = classes.first()?.rank();
    let mut curves = Vec::new();
    let mut pairs = Vec::new();
    for (i, a) in classes.iter().enumerate() {
        let s = intersect(a, a).ok()?;
        if s > -2 {
            return None;
        }
        curves.push(Curve::new(i as u32, CurveKind::SmoothRational, s));
        for (j, b) in classes.iter().enumerate().skip(i + 1) {
            let m = intersect(a, b).ok()?;
            if m < 0 {
                return None;
            }
            if m > 0 {
                pairs.push((i as u32, j as u32, m as u32));
            }
        }
    }
    Some(CurveConfig::new(n, curves, pairs))
}

/// Random configuration of `count` curves drawn from classes `L_i - L_I` with
/// distinct `i` in a lattice of rank `n`. Retries until the pairwise products
/// are nonnegative; `None` after `tries` failures.
pub fn random_lattice_config<R: Rng>(rng: &mut R, n: usize, count: usize, tries: usize) -> Option<CurveConfig> {
    assert!(count <= n);
    for _ in 0..tries {
        let mut heads: Vec<usize> = (0..n).collect();
        heads.shuffle(rng);
        let classes: Vec<LatticeClass> = heads[..count]
            .iter()
            .map(|&i| {
                let mut set = Vec::new();
                while set.is_empty() {
                    set = (0..n).filter(|&j| j != i && rng.gen_bool(0.35)).collect();
                }
                LatticeClass::type_a(n, i, &IndexSet::new(set).expect("distinct")).expect("in range")
            })
            .collect();
        if let Some(cfg) = config_from_classes(&classes) {
            return Some(cfg);
        }
    }
    None
}

/// Random valid configuration of at most `max_size` curves, not necessarily
/// realisable on any surface: smooth rational curves of square in [-5, -2],
/// occasionally one nodal curve, sparse multiplicities in {1, 2}.
pub fn random_config<R: Rng>(rng: &mut R, max_size: usize) -> CurveConfig {
    let size = rng.gen_range(1..=max_size);
    let mut curves = Vec::with_capacity(size);
    for i in 0..size as u32 {
        if i == 0 && rng.gen_bool(0.2) {
            curves.push(Curve::new(i, CurveKind::NodalRational, rng.gen_range(-5..=0)));
        } else {
            curves.push(Curve::new(i, CurveKind::SmoothRational, rng.gen_range(-5..=-2)));
        }
    }
    let mut pairs = Vec::new();
    for i in 0..size as u32 {
        for j in i + 1..size as u32 {
            if rng.gen_bool(0.3) {
                pairs.push((i, j, if rng.gen_bool(0.9) { 1 } else { 2 }));
            }
        }
    }
    let b2 = rng.gen_range(size..=size + 2);
    CurveConfig::new(b2, curves, pairs)
}

/// Named configurations exercised by the enumerator checks: the singular
/// rational family, Enoki cycles, odd and even Inoue-Hirzebruch examples, an
/// intermediate configuration and a cycle with no representation.
pub fn enumerator_fixtures() -> Vec<(String, CurveConfig)> {
    let mut out = Vec::new();
    for n in 2..=7 {
        out.push((format!("singrat-{n}"), singrat(n, n - 1)));
    }
    out.push(("singrat-4-short".into(), singrat(4, 2)));
    out.push((
        "enoki-1".into(),
        CurveConfig::new(1, vec![Curve::new(0, CurveKind::NodalRational, 0)], vec![]),
    ));
    for n in 2..=6 {
        out.push((format!("enoki-{n}"), rational_cycle(&vec![-2; n])));
    }
    out.push(("odd-ih-1".into(), rational_cycle(&[-1])));
    out.push(("odd-ih-3".into(), rational_cycle(&[-3, -3, -3])));
    out.push((
        "even-ih-2".into(),
        CurveConfig::new(
            2,
            vec![Curve::new(0, CurveKind::NodalRational, -1), Curve::new(1, CurveKind::NodalRational, -1)],
            vec![],
        ),
    ));
    out.push((
        "intermediate-3".into(),
        CurveConfig::new(
            3,
            vec![
                Curve::new(0, CurveKind::SmoothRational, -3),
                Curve::new(1, CurveKind::SmoothRational, -2),
                Curve::new(2, CurveKind::SmoothRational, -2),
            ],
            vec![(0, 1, 2), (1, 2, 1)],
        ),
    ));
    out.push(("unrealisable-3".into(), rational_cycle(&[-2, -2, -3])));
    out
}
