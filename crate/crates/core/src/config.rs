//! Curve configurations: the dual graph of the curves on a surface, its
//! intersection matrix, cycle/branch structure and the sigma trichotomy.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    SmoothRational,
    NodalRational,
    Elliptic,
}

impl CurveKind {
    pub fn is_rational(self) -> bool {
        !matches!(self, CurveKind::Elliptic)
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveKind::SmoothRational => "smooth_rational",
            CurveKind::NodalRational => "nodal_rational",
            CurveKind::Elliptic => "elliptic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Curve {
    pub id: u32,
    pub kind: CurveKind,
    pub self_int: i64,
}

impl Curve {
    pub fn new(id: u32, kind: CurveKind, self_int: i64) -> Self {
        Self { id, kind, self_int }
    }
}

/// `K . D` from the adjunction formula for the three supported curve kinds.
pub fn adjunction_degree(c: &Curve) -> i64 {
    match c.kind {
        CurveKind::SmoothRational => -2 - c.self_int,
        CurveKind::NodalRational | CurveKind::Elliptic => -c.self_int,
    }
}

/// Curves of a surface with second Betti number `b2` and their pairwise
/// intersection multiplicities. Matrix rows follow the order of `curves`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConfig {
    b2: usize,
    curves: Vec<Curve>,
    entries: Vec<(u32, u32, u32)>,
    mult: BTreeMap<(u32, u32), u32>,
}

impl CurveConfig {
    /// Builds a configuration from `(id, id, multiplicity)` entries. The
    /// entries are kept verbatim so that `validate` can report malformed ones.
    pub fn new(b2: usize, curves: Vec<Curve>, intersections: Vec<(u32, u32, u32)>) -> Self {
        let mut mult = BTreeMap::new();
        for &(a, b, m) in &intersections {
            if a != b && m > 0 {
                mult.entry((a.min(b), a.max(b))).or_insert(m);
            }
        }
        Self { b2, curves, entries: intersections, mult }
    }

    pub fn b2(&self) -> usize {
        self.b2
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    /// Raw intersection entries as supplied.
    pub fn entries(&self) -> &[(u32, u32, u32)] {
        &self.entries
    }

    /// Nonzero multiplicities, one entry per unordered pair.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        self.mult.iter().map(|(&(a, b), &m)| (a, b, m))
    }

    pub fn mult(&self, a: u32, b: u32) -> u32 {
        if a == b {
            return 0;
        }
        self.mult.get(&(a.min(b), a.max(b))).copied().unwrap_or(0)
    }

    pub fn position(&self, id: u32) -> Option<usize> {
        self.curves.iter().position(|c| c.id == id)
    }

    pub fn curve(&self, id: u32) -> Option<&Curve> {
        self.curves.iter().find(|c| c.id == id)
    }

    pub fn rational_count(&self) -> usize {
        self.curves.iter().filter(|c| c.kind.is_rational()).count()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let mut push = |code: &'static str, ids: Vec<u32>, message: String| {
            issues.push(ValidationIssue { code, curve_ids: ids, message });
        };
        if self.b2 == 0 {
            push("b2_positive", vec![], "b2 must be at least 1".into());
        }
        let mut seen = BTreeSet::new();
        for c in &self.curves {
            if !seen.insert(c.id) {
                push("duplicate_id", vec![c.id], format!("curve id {} appears twice", c.id));
            }
            match c.kind {
                CurveKind::SmoothRational if c.self_int > -2 => push(
                    "smooth_self_int",
                    vec![c.id],
                    format!("smooth rational needs self-intersection <= -2, curve {} has {}", c.id, c.self_int),
                ),
                CurveKind::NodalRational | CurveKind::Elliptic if c.self_int > 0 => push(
                    "singular_self_int",
                    vec![c.id],
                    format!("{} curve {} needs self-intersection <= 0, has {}", c.kind, c.id, c.self_int),
                ),
                _ => {}
            }
        }
        let rational = self.rational_count();
        if rational > self.b2 {
            push(
                "too_many_rational",
                self.curves.iter().filter(|c| c.kind.is_rational()).map(|c| c.id).collect(),
                format!("{rational} rational curves exceed b2 = {}", self.b2),
            );
        }
        let elliptic: Vec<u32> =
            self.curves.iter().filter(|c| c.kind == CurveKind::Elliptic).map(|c| c.id).collect();
        if elliptic.len() > 1 {
            push("elliptic_count", elliptic, "at most one elliptic curve is allowed".into());
        }
        let mut declared: BTreeMap<(u32, u32), u32> = BTreeMap::new();
        for &(a, b, m) in &self.entries {
            if a == b {
                push("self_loop", vec![a], format!("pair entry ({a}, {a}) on the diagonal"));
                continue;
            }
            for id in [a, b] {
                if !seen.contains(&id) {
                    push("unknown_id", vec![id], format!("pair entry references unknown curve {id}"));
                }
            }
            let key = (a.min(b), a.max(b));
            match declared.get(&key) {
                Some(&prev) if prev != m => push(
                    "asymmetric",
                    vec![key.0, key.1],
                    format!("pair ({}, {}) declared with multiplicities {prev} and {m}", key.0, key.1),
                ),
                _ => {
                    declared.insert(key, m);
                }
            }
        }
        ValidationReport { valid: issues.is_empty(), issues }
    }

    fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        if report.valid {
            Ok(())
        } else {
            Err(Error::InvalidConfig(
                report.issues.iter().map(|i| i.message.as_str()).collect::<Vec<_>>().join("; "),
            ))
        }
    }

    pub fn intersection_matrix(&self) -> Result<IntMatrix> {
        self.require_valid()?;
        Ok(self.matrix_unchecked())
    }

    pub(crate) fn matrix_unchecked(&self) -> IntMatrix {
        let n = self.curves.len();
        let mut m = IntMatrix::zeros(n);
        for (i, a) in self.curves.iter().enumerate() {
            m.set(i, i, a.self_int);
            for (j, b) in self.curves.iter().enumerate().skip(i + 1) {
                let v = i64::from(self.mult(a.id, b.id));
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        m
    }

    pub fn find_cycles(&self) -> Result<CycleAnalysis> {
        self.require_valid()?;
        find_cycles(self)
    }

    pub fn sigma_classify(&self) -> Result<SigmaReport> {
        self.require_valid()?;
        sigma_classify(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationIssue {
    pub code: &'static str,
    pub curve_ids: Vec<u32>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub issues: Vec<ValidationIssue>,
}

/// A tree of curves hanging off a cycle curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Branch {
    pub root: u32,
    /// Breadth-first from the curve meeting the root.
    pub curves: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleRecord {
    /// Members in cyclic order, starting from the smallest id.
    pub members: Vec<u32>,
    /// Number of rational curves: 0 for an elliptic curve, 1 for a nodal one.
    pub length: usize,
    pub branches: Vec<Branch>,
}

impl CycleRecord {
    pub fn has_branch(&self) -> bool {
        !self.branches.is_empty()
    }

    pub fn is_root(&self, id: u32) -> bool {
        self.branches.iter().any(|b| b.root == id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleAnalysis {
    pub cycles: Vec<CycleRecord>,
    /// Curves lying in tree components that carry no cycle.
    pub isolated: Vec<u32>,
}

impl CycleAnalysis {
    /// Cycles made of rational curves (length at least one).
    pub fn rational_cycles(&self) -> impl Iterator<Item = &CycleRecord> {
        self.cycles.iter().filter(|c| c.length >= 1)
    }

    pub fn cycle_of(&self, id: u32) -> Option<&CycleRecord> {
        self.cycles.iter().find(|c| c.members.contains(&id))
    }
}

fn find_cycles(cfg: &CurveConfig) -> Result<CycleAnalysis> {
    let n = cfg.curves.len();
    let ids: Vec<u32> = cfg.curves.iter().map(|c| c.id).collect();
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    for (a, b, m) in cfg.pairs() {
        let (Some(i), Some(j)) = (cfg.position(a), cfg.position(b)) else { continue };
        adj[i].push((j, m));
        adj[j].push((i, m));
    }
    let has_loop = |i: usize| cfg.curves[i].kind != CurveKind::SmoothRational;

    let mut comp = vec![usize::MAX; n];
    let mut cycles = Vec::new();
    let mut isolated = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut members = vec![start];
        comp[start] = start;
        let mut q = VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            for &(w, _) in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = start;
                    members.push(w);
                    q.push_back(w);
                }
            }
        }
        let edges: u64 = members
            .iter()
            .map(|&v| adj[v].iter().map(|&(_, m)| u64::from(m)).sum::<u64>())
            .sum::<u64>()
            / 2
            + members.iter().filter(|&&v| has_loop(v)).count() as u64;
        let cyclomatic = edges as i64 - members.len() as i64 + 1;
        let mut sorted_ids: Vec<u32> = members.iter().map(|&v| ids[v]).collect();
        sorted_ids.sort_unstable();
        match cyclomatic {
            0 => isolated.extend(sorted_ids),
            1 => cycles.push(component_cycle(cfg, &adj, &members, &ids)?),
            _ => {
                return Err(Error::Structural(format!(
                    "connected component {sorted_ids:?} carries more than one cycle"
                )))
            }
        }
    }
    isolated.sort_unstable();
    cycles.sort_by_key(|c| c.members[0]);
    Ok(CycleAnalysis { cycles, isolated })
}

/// Extracts the unique cycle (the 2-core) of a unicyclic component and the
/// trees hanging off it.
fn component_cycle(
    cfg: &CurveConfig,
    adj: &[Vec<(usize, u32)>],
    members: &[usize],
    ids: &[u32],
) -> Result<CycleRecord> {
    let n = cfg.curves.len();
    let in_comp: Vec<bool> = {
        let mut v = vec![false; n];
        for &m in members {
            v[m] = true;
        }
        v
    };
    let mut deg = vec![0u64; n];
    for &v in members {
        deg[v] = adj[v].iter().map(|&(_, m)| u64::from(m)).sum::<u64>()
            + if cfg.curves[v].kind != CurveKind::SmoothRational { 2 } else { 0 };
    }
    let mut removed = vec![false; n];
    let mut q: VecDeque<usize> = members.iter().copied().filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = q.pop_front() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &(w, m) in &adj[v] {
            if !removed[w] {
                deg[w] -= u64::from(m);
                if deg[w] <= 1 {
                    q.push_back(w);
                }
            }
        }
    }
    let core: Vec<usize> = members.iter().copied().filter(|&v| !removed[v]).collect();
    let is_core = |v: usize| in_comp[v] && !removed[v];

    let (ordered, length) = if core.len() == 1 {
        let v = core[0];
        let length = match cfg.curves[v].kind {
            CurveKind::Elliptic => 0,
            CurveKind::NodalRational => 1,
            CurveKind::SmoothRational => {
                return Err(Error::Structural(format!("curve {} forms a degenerate cycle", ids[v])))
            }
        };
        (vec![v], length)
    } else {
        if let Some(&bad) = core.iter().find(|&&v| cfg.curves[v].kind != CurveKind::SmoothRational) {
            return Err(Error::Structural(format!(
                "curve {} lies on a cycle of several curves but is not smooth rational",
                ids[bad]
            )));
        }
        let start = *core.iter().min_by_key(|&&v| ids[v]).expect("nonempty core");
        let mut ordered = vec![start];
        if core.len() > 2 {
            let mut nbrs: Vec<usize> = adj[start].iter().map(|&(w, _)| w).filter(|&w| is_core(w)).collect();
            nbrs.sort_by_key(|&w| ids[w]);
            let mut prev = start;
            let mut cur = nbrs[0];
            while cur != start {
                ordered.push(cur);
                let next = adj[cur]
                    .iter()
                    .map(|&(w, _)| w)
                    .find(|&w| is_core(w) && w != prev)
                    .expect("2-core of a unicyclic graph is a ring");
                prev = cur;
                cur = next;
            }
        } else {
            ordered.extend(core.iter().copied().filter(|&v| v != start));
        }
        let len = ordered.len();
        (ordered, len)
    };

    let mut branches = Vec::new();
    for &root in &ordered {
        let mut starts: Vec<usize> = adj[root].iter().map(|&(w, _)| w).filter(|&w| !is_core(w)).collect();
        starts.sort_by_key(|&w| ids[w]);
        for s in starts {
            let mut seen = vec![false; n];
            seen[s] = true;
            seen[root] = true;
            let mut tree = vec![ids[s]];
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                let mut next: Vec<usize> =
                    adj[v].iter().map(|&(w, _)| w).filter(|&w| !seen[w] && !is_core(w)).collect();
                next.sort_by_key(|&w| ids[w]);
                for w in next {
                    seen[w] = true;
                    tree.push(ids[w]);
                    q.push_back(w);
                }
            }
            branches.push(Branch { root: ids[root], curves: tree });
        }
    }
    Ok(CycleRecord { members: ordered.iter().map(|&v| ids[v]).collect(), length, branches })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IhParity {
    /// Two cycles of rational curves.
    Even,
    /// One cycle.
    Odd,
    Undetermined,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum SigmaVerdict {
    EnokiClass,
    Intermediate,
    InoueHirzebruch {
        parity: IhParity,
        /// For a single cycle `C`: whether `#C - C^2 = 2 b2` holds.
        odd_cross_check: Option<bool>,
    },
    OutOfRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigmaReport {
    pub sigma: i64,
    pub b2: usize,
    pub verdict: SigmaVerdict,
}

/// Contribution of a rational curve to `sigma`: `-D^2`, plus two for a nodal
/// curve (the self-intersection of its normalisation).
pub fn sigma_contribution(c: &Curve) -> i64 {
    match c.kind {
        CurveKind::SmoothRational => -c.self_int,
        CurveKind::NodalRational => 2 - c.self_int,
        CurveKind::Elliptic => 0,
    }
}

/// Square of a reduced cycle, read off the intersection matrix.
pub fn cycle_square(cfg: &CurveConfig, cycle: &CycleRecord) -> i64 {
    let pos: Vec<usize> = cycle.members.iter().filter_map(|&id| cfg.position(id)).collect();
    let m = cfg.matrix_unchecked();
    pos.iter().flat_map(|&i| pos.iter().map(move |&j| (i, j))).map(|(i, j)| m.get(i, j)).sum()
}

fn sigma_classify(cfg: &CurveConfig) -> Result<SigmaReport> {
    let n = cfg.b2;
    let found = cfg.rational_count();
    if found < n {
        return Err(Error::InsufficientCurves { found, b2: n });
    }
    let sigma: i64 = cfg.curves.iter().map(sigma_contribution).sum();
    let n64 = n as i64;
    let verdict = if sigma == 2 * n64 {
        SigmaVerdict::EnokiClass
    } else if sigma > 2 * n64 && sigma < 3 * n64 {
        SigmaVerdict::Intermediate
    } else if sigma == 3 * n64 {
        let analysis = find_cycles(cfg)?;
        let rational: Vec<&CycleRecord> = analysis.rational_cycles().collect();
        match rational.as_slice() {
            [c] => {
                let lhs = c.length as i64 - cycle_square(cfg, c);
                SigmaVerdict::InoueHirzebruch {
                    parity: IhParity::Odd,
                    odd_cross_check: Some(lhs == 2 * n64),
                }
            }
            [_, _] => SigmaVerdict::InoueHirzebruch { parity: IhParity::Even, odd_cross_check: None },
            _ => SigmaVerdict::InoueHirzebruch { parity: IhParity::Undetermined, odd_cross_check: None },
        }
    } else {
        SigmaVerdict::OutOfRange
    };
    Ok(SigmaReport { sigma, b2: n, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use CurveKind::*;

    #[test]
    fn validate_examples() {
        let cfg = CurveConfig::new(1, vec![Curve::new(0, SmoothRational, -1)], vec![]);
        let r = cfg.validate();
        assert!(!r.valid);
        assert_eq!(r.issues[0].code, "smooth_self_int");

        let cfg = CurveConfig::new(1, vec![], vec![]);
        assert!(cfg.validate().valid);

        let cfg = CurveConfig::new(3, vec![Curve::new(0, Elliptic, 0), Curve::new(1, Elliptic, -1)], vec![]);
        let r = cfg.validate();
        assert!(r.issues.iter().any(|i| i.code == "elliptic_count"));
    }

    #[test]
    fn validate_reports_pair_problems() {
        let cfg = CurveConfig::new(
            3,
            vec![Curve::new(0, SmoothRational, -2), Curve::new(1, SmoothRational, -2)],
            vec![(0, 0, 1), (0, 1, 1), (1, 0, 2), (0, 7, 1)],
        );
        let codes: Vec<_> = cfg.validate().issues.iter().map(|i| i.code).collect();
        assert_eq!(codes, vec!["self_loop", "asymmetric", "unknown_id"]);
    }

    #[test]
    fn matrix_examples() {
        let m = families::singrat(3, 2).intersection_matrix().unwrap();
        assert_eq!(m.rows(), &[vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]]);

        let cfg = CurveConfig::new(1, vec![Curve::new(0, NodalRational, -1)], vec![]);
        assert_eq!(cfg.intersection_matrix().unwrap().rows(), &[vec![-1]]);

        let m = families::rational_cycle(&[-2, -2]).intersection_matrix().unwrap();
        assert_eq!(m.rows(), &[vec![-2, 2], vec![2, -2]]);

        let bad = CurveConfig::new(1, vec![Curve::new(0, SmoothRational, -1)], vec![]);
        assert!(matches!(bad.intersection_matrix(), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn cycles_examples() {
        let cfg = CurveConfig::new(1, vec![Curve::new(0, NodalRational, -1)], vec![]);
        let a = cfg.find_cycles().unwrap();
        assert_eq!(a.cycles, vec![CycleRecord { members: vec![0], length: 1, branches: vec![] }]);

        let a = families::rational_cycle(&[-2, -2, -2]).find_cycles().unwrap();
        assert_eq!(a.cycles.len(), 1);
        assert_eq!(a.cycles[0].members, vec![0, 1, 2]);
        assert_eq!(a.cycles[0].length, 3);

        let a = families::singrat(3, 2).find_cycles().unwrap();
        assert_eq!(a.cycles.len(), 1);
        assert_eq!(a.cycles[0].length, 1);
        assert_eq!(a.cycles[0].branches, vec![Branch { root: 0, curves: vec![1, 2] }]);
        assert!(a.isolated.is_empty());
    }

    #[test]
    fn cycle_order_follows_the_ring() {
        // ring 0-3-1-2-0 given out of order, plus an isolated chain 4-5
        let curves = (0..6).map(|i| Curve::new(i, SmoothRational, -2)).collect();
        let cfg = CurveConfig::new(6, curves, vec![(0, 3, 1), (3, 1, 1), (1, 2, 1), (2, 0, 1), (4, 5, 1)]);
        let a = cfg.find_cycles().unwrap();
        assert_eq!(a.cycles[0].members, vec![0, 2, 1, 3]);
        assert_eq!(a.isolated, vec![4, 5]);
    }

    #[test]
    fn two_cycles_in_one_component_is_structural() {
        let curves = vec![Curve::new(0, NodalRational, -3), Curve::new(1, SmoothRational, -2), Curve::new(2, NodalRational, -3)];
        let cfg = CurveConfig::new(3, curves, vec![(0, 1, 1), (1, 2, 1)]);
        assert!(matches!(cfg.find_cycles(), Err(Error::Structural(_))));

        let curves = vec![Curve::new(0, SmoothRational, -2), Curve::new(1, SmoothRational, -2)];
        let cfg = CurveConfig::new(2, curves, vec![(0, 1, 3)]);
        assert!(matches!(cfg.find_cycles(), Err(Error::Structural(_))));
    }

    #[test]
    fn branching_trees_are_reported() {
        // nodal 0, chain 0-1-2 and 1-3
        let curves = vec![
            Curve::new(0, NodalRational, -3),
            Curve::new(1, SmoothRational, -2),
            Curve::new(2, SmoothRational, -2),
            Curve::new(3, SmoothRational, -2),
        ];
        let cfg = CurveConfig::new(4, curves, vec![(0, 1, 1), (1, 2, 1), (1, 3, 1)]);
        let a = cfg.find_cycles().unwrap();
        assert_eq!(a.cycles[0].branches, vec![Branch { root: 0, curves: vec![1, 2, 3] }]);
    }

    #[test]
    fn sigma_examples() {
        let r = families::rational_cycle(&[-2, -2, -2]).sigma_classify().unwrap();
        assert_eq!((r.sigma, r.verdict), (6, SigmaVerdict::EnokiClass));

        let r = families::rational_cycle(&[-2, -3, -2, -3]).sigma_classify().unwrap();
        assert_eq!((r.sigma, r.verdict), (10, SigmaVerdict::Intermediate));

        // odd IH with b2 = 1: nodal curve of square -1
        let cfg = CurveConfig::new(1, vec![Curve::new(0, NodalRational, -1)], vec![]);
        let r = cfg.sigma_classify().unwrap();
        assert_eq!(r.sigma, 3);
        assert_eq!(
            r.verdict,
            SigmaVerdict::InoueHirzebruch { parity: IhParity::Odd, odd_cross_check: Some(true) }
        );

        // Enoki b2 = 1: nodal curve of square 0
        let cfg = CurveConfig::new(1, vec![Curve::new(0, NodalRational, 0)], vec![]);
        assert_eq!(cfg.sigma_classify().unwrap().verdict, SigmaVerdict::EnokiClass);

        let cfg = CurveConfig::new(2, vec![Curve::new(0, NodalRational, -1)], vec![]);
        assert_eq!(cfg.sigma_classify().unwrap_err(), Error::InsufficientCurves { found: 1, b2: 2 });
    }

    #[test]
    fn even_ih_has_two_cycles() {
        let cfg = CurveConfig::new(2, vec![Curve::new(0, NodalRational, -1), Curve::new(1, NodalRational, -1)], vec![]);
        let r = cfg.sigma_classify().unwrap();
        assert_eq!(r.sigma, 6);
        assert_eq!(r.verdict, SigmaVerdict::InoueHirzebruch { parity: IhParity::Even, odd_cross_check: None });
    }

    #[test]
    fn adjunction_examples() {
        assert_eq!(adjunction_degree(&Curve::new(0, SmoothRational, -2)), 0);
        assert_eq!(adjunction_degree(&Curve::new(0, NodalRational, -2)), 2);
        assert_eq!(adjunction_degree(&Curve::new(0, Elliptic, 0)), 0);
    }
}
