//! Homology representations of curve configurations.
//!
//! Every rational curve is assigned a class in the exceptional basis: smooth
//! rational curves get `L_i - L_I`, nodal curves (one-curve cycles) get a
//! negative sum `-L_T`. An assignment is admissible when it reproduces the
//! configured intersection numbers and satisfies the combinatorial laws
//! checked by [`verify`]:
//!
//! * (a) pairwise and self intersections match the configuration;
//! * (b) the heads `i_j` are distinct, no index lies in three sets `I_j` and
//!   two sets share at most one index;
//! * (c) each cycle sums to `-L_T` with `|T| = n - #C`, where the complement
//!   of `T` is exactly the set of heads of the cycle curves (or to
//!   `-(L_0 + ... + L_{n-1}) + F_2` for a torsion assignment);
//! * (d) the supports of all classes cover `[0, n-1]` (only when the form is
//!   negative definite);
//! * (e) `#C - C^2 = b2`, or `2 b2` for a torsion assignment.
//!
//! Results are identified up to renumbering of the basis and reported in a
//! canonical form: the first cycle sums to `-(L_s + ... + L_{n-1})` and the
//! per-curve descriptors are lexicographically minimal.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::config::{CurveConfig, CurveKind};
use crate::error::{Error, Result};
use crate::lattice::{classify_normal_form, intersect, IndexSet, LatticeClass, NormalForm};
use crate::linalg::{is_negative_definite, Definiteness, IntMatrix};

pub const DEFAULT_CAP: usize = 8;

/// Largest rank the bitmask search supports.
const MAX_RANK: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CurveAssignment {
    pub curve: u32,
    pub class: LatticeClass,
    pub form: NormalForm,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Representation {
    /// One entry per rational curve, in configuration order.
    pub assignments: Vec<CurveAssignment>,
    /// The cycle class carries the order-two twist `F_2` (odd Inoue-Hirzebruch).
    /// The flag is stored on the first curve of the cycle.
    pub torsion: bool,
}

impl Representation {
    pub fn class_of(&self, curve: u32) -> Option<&LatticeClass> {
        self.assignments.iter().find(|a| a.curve == curve).map(|a| &a.class)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub representations: Vec<Representation>,
    pub truncated: bool,
    /// The torsion search ran because the untwisted one was empty.
    pub torsion_phase: bool,
    /// Two-cycle configuration: the complementary split of the two cycle
    /// classes is taken as an axiom rather than derived.
    pub two_cycle_rule: bool,
}

/// Candidate class for one curve, as bitmasks over basis indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Choice {
    /// `L_head - L_set`.
    A { head: usize, set: u64 },
    /// `-L_set`.
    Neg { set: u64 },
}

impl Choice {
    fn coeff(self, k: usize) -> i64 {
        match self {
            Choice::A { head, set } => {
                if head == k {
                    1
                } else if set >> k & 1 == 1 {
                    -1
                } else {
                    0
                }
            }
            Choice::Neg { set } => -((set >> k & 1) as i64),
        }
    }

    /// Intersection product `-sum a_k b_k`.
    pub(crate) fn product(self, other: Choice) -> i64 {
        let bit = |m: u64, k: usize| (m >> k & 1) as i64;
        let common = |a: u64, b: u64| i64::from((a & b).count_ones());
        match (self, other) {
            (Choice::A { head: i, set: s }, Choice::A { head: j, set: t }) => {
                -(i64::from(i == j) - bit(t, i) - bit(s, j) + common(s, t))
            }
            (Choice::A { head: i, set: s }, Choice::Neg { set: t })
            | (Choice::Neg { set: t }, Choice::A { head: i, set: s }) => bit(t, i) - common(s, t),
            (Choice::Neg { set: s }, Choice::Neg { set: t }) => -common(s, t),
        }
    }

    pub(crate) fn to_class(self, n: usize) -> LatticeClass {
        LatticeClass::new((0..n).map(|k| self.coeff(k)).collect()).expect("rank is positive")
    }

    pub(crate) fn permuted(self, perm: &[usize]) -> Choice {
        let map = |m: u64| {
            let mut out = 0;
            let mut rest = m;
            while rest != 0 {
                let k = rest.trailing_zeros() as usize;
                out |= 1 << perm[k];
                rest &= rest - 1;
            }
            out
        };
        match self {
            Choice::A { head, set } => Choice::A { head: perm[head], set: map(set) },
            Choice::Neg { set } => Choice::Neg { set: map(set) },
        }
    }
}

/// The data the search and the checks run on, extracted once from a config.
#[derive(Debug, Clone)]
pub(crate) struct Problem {
    pub n: usize,
    /// Rational curves, configuration order.
    pub ids: Vec<u32>,
    pub kinds: Vec<CurveKind>,
    pub target: IntMatrix,
    /// Cycles as index lists into `ids`, in cyclic order.
    pub cycles: Vec<Vec<usize>>,
    /// Cycle curves first, then branches outward, then the rest.
    pub order: Vec<usize>,
    pub definite: bool,
}

impl Problem {
    /// `cap = None` skips the rank cap (used by `verify`).
    pub(crate) fn new(cfg: &CurveConfig, cap: Option<usize>) -> Result<Self> {
        let n = cfg.b2();
        if let Some(cap) = cap {
            if n > cap {
                return Err(Error::CapExceeded { b2: n, cap });
            }
        }
        if n > MAX_RANK {
            return Err(Error::CapExceeded { b2: n, cap: MAX_RANK });
        }
        let analysis = cfg.find_cycles()?;
        if cfg.curves().iter().any(|c| c.kind == CurveKind::Elliptic) {
            return Err(Error::Domain("elliptic curves have no representation in the exceptional basis search".into()));
        }
        let full = cfg.intersection_matrix()?;
        let definite = is_negative_definite(&full)? == Definiteness::Definite;
        let ids: Vec<u32> = cfg.curves().iter().map(|c| c.id).collect();
        let kinds = cfg.curves().iter().map(|c| c.kind).collect();
        let pos = |id: u32| ids.iter().position(|&x| x == id).expect("configured curve");
        let cycles: Vec<Vec<usize>> =
            analysis.rational_cycles().map(|c| c.members.iter().map(|&id| pos(id)).collect()).collect();
        let mut order = Vec::new();
        for cycle in analysis.rational_cycles() {
            order.extend(cycle.members.iter().map(|&id| pos(id)));
            for b in &cycle.branches {
                order.extend(b.curves.iter().map(|&id| pos(id)));
            }
        }
        for &id in &ids {
            if !order.contains(&pos(id)) {
                order.push(pos(id));
            }
        }
        Ok(Self { n, ids, kinds, target: full, cycles, order, definite })
    }

    pub(crate) fn check_shape(&self) -> Result<()> {
        match self.cycles.len() {
            0 => Err(Error::Domain("configuration contains no cycle of rational curves".into())),
            1 | 2 => Ok(()),
            k => Err(Error::Domain(format!("{k} cycles; at most two are supported"))),
        }
    }

    pub(crate) fn representation(&self, choices: &[Choice], torsion: bool) -> Representation {
        let flagged = torsion.then(|| self.cycles[0][0]);
        let assignments = self
            .ids
            .iter()
            .zip(choices)
            .enumerate()
            .map(|(p, (&curve, &c))| {
                let class = c.to_class(self.n).with_torsion(flagged == Some(p));
                CurveAssignment { curve, form: classify_normal_form(&class), class }
            })
            .collect();
        Representation { assignments, torsion }
    }

    /// Tail of the first cycle: positions where its sum has coefficient -1.
    pub(crate) fn tail(&self, choices: &[Choice]) -> u64 {
        (0..self.n)
            .filter(|&k| self.cycles[0].iter().map(|&p| choices[p].coeff(k)).sum::<i64>() < 0)
            .fold(0, |m, k| m | 1 << k)
    }

    /// Canonical relabelling: among basis permutations sending the tail of the
    /// first cycle to `[n - |T|, n)`, the one whose sequence of per-curve
    /// descriptors (head, then sorted index set) is lexicographically least.
    ///
    /// Computed by ordered partition refinement: labels not yet told apart by
    /// the curves seen so far share a cell, and each curve splits every cell
    /// into its head, its set members and the rest, in that order.
    pub(crate) fn canonicalize(&self, choices: &[Choice]) -> Vec<Choice> {
        let tail = self.tail(choices);
        let (head_src, tail_src): (Vec<usize>, Vec<usize>) = (0..self.n).partition(|&k| tail >> k & 1 == 0);
        let mut cells: Vec<Vec<usize>> = [head_src, tail_src].into_iter().filter(|c| !c.is_empty()).collect();
        for c in choices {
            let (head, set) = match *c {
                Choice::A { head, set } => (Some(head), set),
                Choice::Neg { set } => (None, set),
            };
            let mut next = Vec::with_capacity(cells.len() + 2);
            for cell in cells {
                let (h, rest): (Vec<usize>, Vec<usize>) = cell.into_iter().partition(|&x| Some(x) == head);
                let (s, r): (Vec<usize>, Vec<usize>) = rest.into_iter().partition(|&x| set >> x & 1 == 1);
                next.extend([h, s, r].into_iter().filter(|p| !p.is_empty()));
            }
            cells = next;
        }
        let mut perm = vec![0; self.n];
        for (target, &src) in cells.iter().flatten().enumerate() {
            perm[src] = target;
        }
        choices.iter().map(|c| c.permuted(&perm)).collect()
    }
}

/// Subsets of the bits of `pool` with exactly `size` members.
fn subsets_of(pool: u64, size: usize) -> Vec<u64> {
    let bits: Vec<usize> = (0..64).filter(|&k| pool >> k & 1 == 1).collect();
    let mut out = Vec::new();
    if size > bits.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        out.push(idx.iter().fold(0u64, |m, &i| m | 1 << bits[i]));
        let mut k = size;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] != k + bits.len() - size {
                break;
            }
            if k == 0 {
                return out;
            }
        }
        if idx[k] == k + bits.len() - size {
            return out;
        }
        idx[k] += 1;
        for j in k + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn block(from: usize, len: usize) -> u64 {
    if len == 0 {
        0
    } else {
        ((1u64 << len) - 1) << from
    }
}

/// Sets of exactly `size` labels formed by a prefix of each pool.
fn prefix_sets(pools: &[&[usize]], size: usize) -> Vec<u64> {
    fn rec(pools: &[&[usize]], size: usize, acc: u64, out: &mut Vec<u64>) {
        let Some((first, rest)) = pools.split_first() else {
            if size == 0 {
                out.push(acc);
            }
            return;
        };
        let room: usize = rest.iter().map(|p| p.len()).sum();
        for take in size.saturating_sub(room)..=size.min(first.len()) {
            let add = first[..take].iter().fold(0u64, |m, &k| m | 1 << k);
            rec(rest, size - take, acc | add, out);
        }
    }
    let mut out = Vec::new();
    rec(pools, size, 0, &mut out);
    out
}

struct Search<'a> {
    p: &'a Problem,
    torsion: bool,
    choices: Vec<Option<Choice>>,
    heads: u64,
    /// Number of sets `I_j` containing each index.
    cover: Vec<u8>,
    found: BTreeSet<Vec<Choice>>,
    limit: Option<usize>,
}

impl Search<'_> {
    /// Labels grouped by their coefficient column over the curves assigned so
    /// far. Swapping two labels of one group fixes the partial assignment, so
    /// only one representative choice per orbit needs to be tried.
    fn label_groups(&self) -> Vec<Vec<usize>> {
        let mut groups: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
        for k in 0..self.p.n {
            let column = self.choices.iter().flatten().map(|c| c.coeff(k)).collect();
            groups.entry(column).or_default().push(k);
        }
        groups.into_values().collect()
    }

    /// Candidates for the curve at `pos`: within each group of interchangeable
    /// labels, the head is the first label and the set takes a prefix.
    fn candidates(&self, pos: usize) -> Vec<Choice> {
        let n = self.p.n;
        let s = self.p.target.get(pos, pos);
        let groups = self.label_groups();
        let mut out = Vec::new();
        match self.p.kinds[pos] {
            CurveKind::SmoothRational => {
                let size = (-s - 1) as usize;
                for (g, group) in groups.iter().enumerate() {
                    let head = group[0];
                    let pools: Vec<&[usize]> =
                        groups.iter().enumerate().map(|(h, gr)| if h == g { &gr[1..] } else { &gr[..] }).collect();
                    for set in prefix_sets(&pools, size) {
                        out.push(Choice::A { head, set });
                    }
                }
            }
            CurveKind::NodalRational if self.torsion => out.push(Choice::Neg { set: block(0, n) }),
            CurveKind::NodalRational => {
                let pools: Vec<&[usize]> = groups.iter().map(Vec::as_slice).collect();
                for set in prefix_sets(&pools, (-s) as usize) {
                    out.push(Choice::Neg { set });
                }
            }
            CurveKind::Elliptic => {}
        }
        out
    }

    fn compatible(&self, pos: usize, c: Choice) -> bool {
        if c.product(c) != self.p.target.get(pos, pos) {
            return false;
        }
        if let Choice::A { head, set } = c {
            if self.heads >> head & 1 == 1 {
                return false;
            }
            if (0..self.p.n).any(|k| set >> k & 1 == 1 && self.cover[k] >= 2) {
                return false;
            }
            for other in self.choices.iter().flatten() {
                if let Choice::A { set: t, .. } = other {
                    if (set & t).count_ones() > 1 {
                        return false;
                    }
                }
            }
        }
        self.choices
            .iter()
            .enumerate()
            .all(|(q, o)| o.is_none_or(|o| o.product(c) == self.p.target.get(pos, q)))
    }

    fn place(&mut self, pos: usize, c: Choice, undo: bool) {
        if let Choice::A { head, set } = c {
            self.heads ^= 1 << head;
            for k in 0..self.p.n {
                if set >> k & 1 == 1 {
                    if undo {
                        self.cover[k] -= 1;
                    } else {
                        self.cover[k] += 1;
                    }
                }
            }
        }
        self.choices[pos] = if undo { None } else { Some(c) };
    }

    fn run(&mut self, depth: usize) {
        if self.limit.is_some_and(|l| self.found.len() > l) {
            return;
        }
        if depth == self.p.order.len() {
            let choices: Vec<Choice> = self.choices.iter().map(|c| c.expect("complete")).collect();
            let rep = self.p.representation(&choices, self.torsion);
            if check_all(self.p, &rep).iter().all(|c| c.passed) {
                self.found.insert(self.p.canonicalize(&choices));
            }
            return;
        }
        let pos = self.p.order[depth];
        for c in self.candidates(pos) {
            if self.compatible(pos, c) {
                self.place(pos, c, false);
                self.run(depth + 1);
                self.place(pos, c, true);
            }
        }
    }
}

fn search(p: &Problem, torsion: bool, limit: Option<usize>) -> BTreeSet<Vec<Choice>> {
    let mut s = Search {
        p,
        torsion,
        choices: vec![None; p.ids.len()],
        heads: 0,
        cover: vec![0; p.n],
        found: BTreeSet::new(),
        limit,
    };
    s.run(0);
    s.found
}

/// All admissible representations, canonicalised and sorted. At most
/// `max_solutions` are returned; `truncated` records whether more exist.
pub fn enumerate(cfg: &CurveConfig, cap: usize, max_solutions: Option<usize>) -> Result<Enumeration> {
    let p = Problem::new(cfg, Some(cap))?;
    p.check_shape()?;
    let mut found = search(&p, false, max_solutions);
    let mut torsion_phase = false;
    if found.is_empty() && p.cycles.len() == 1 {
        torsion_phase = true;
        found = search(&p, true, max_solutions);
    }
    let mut representations: Vec<Representation> =
        found.iter().map(|c| p.representation(c, torsion_phase)).collect();
    let truncated = max_solutions.is_some_and(|l| representations.len() > l);
    if let Some(l) = max_solutions {
        representations.truncate(l);
    }
    Ok(Enumeration { representations, truncated, torsion_phase, two_cycle_rule: p.cycles.len() == 2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    Intersections,
    IndexSets,
    CycleClass,
    Covering,
    SharpLaw,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintCheck {
    pub constraint: Constraint,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<ConstraintCheck>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConstraintCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Re-checks a representation from scratch with lattice arithmetic only.
pub fn verify(cfg: &CurveConfig, rep: &Representation) -> Result<VerifyReport> {
    let p = Problem::new(cfg, None)?;
    Ok(VerifyReport { checks: check_all(&p, rep) })
}

fn check(constraint: Constraint, failures: Vec<String>, ok: &str) -> ConstraintCheck {
    ConstraintCheck {
        constraint,
        passed: failures.is_empty(),
        detail: if failures.is_empty() { ok.to_string() } else { failures.join("; ") },
    }
}

pub(crate) fn check_all(p: &Problem, rep: &Representation) -> Vec<ConstraintCheck> {
    let n = p.n;
    let ids: Vec<u32> = rep.assignments.iter().map(|a| a.curve).collect();
    if ids != p.ids || rep.assignments.iter().any(|a| a.class.rank() != n) {
        return vec![check(
            Constraint::Intersections,
            vec![format!("representation covers curves {ids:?} at rank {n}, configuration has {:?}", p.ids)],
            "",
        )];
    }
    let classes: Vec<&LatticeClass> = rep.assignments.iter().map(|a| &a.class).collect();
    let mut out = Vec::new();

    // (a)
    let mut bad = Vec::new();
    for i in 0..classes.len() {
        for j in i..classes.len() {
            let got = intersect(classes[i], classes[j]).unwrap_or(i64::MIN);
            let want = p.target.get(i, j);
            if got != want {
                bad.push(format!("D{}.D{} = {got}, expected {want}", ids[i], ids[j]));
            }
        }
    }
    out.push(check(Constraint::Intersections, bad, "all intersection numbers match"));

    // (b)
    let mut bad = Vec::new();
    let mut heads: BTreeMap<usize, u32> = BTreeMap::new();
    let mut sets: Vec<(u32, IndexSet)> = Vec::new();
    for (a, kind) in rep.assignments.iter().zip(&p.kinds) {
        match (kind, &a.form) {
            (CurveKind::SmoothRational, NormalForm::TypeA { i, set }) => {
                if let Some(prev) = heads.insert(*i, a.curve) {
                    bad.push(format!("curves {prev} and {} share head L{i}", a.curve));
                }
                sets.push((a.curve, set.clone()));
            }
            (CurveKind::SmoothRational, form) => {
                bad.push(format!("smooth curve {} has class {} of form {form}", a.curve, a.class));
            }
            (_, _) => {
                if a.class.coeffs().iter().any(|&x| x != 0 && x != -1) {
                    bad.push(format!("cycle curve {} has class {}, not a negative sum", a.curve, a.class));
                }
            }
        }
    }
    for x in 0..sets.len() {
        for y in x + 1..sets.len() {
            let common = sets[x].1.members().iter().filter(|&&k| sets[y].1.contains(k)).count();
            if common > 1 {
                bad.push(format!("sets of curves {} and {} share {common} indices", sets[x].0, sets[y].0));
            }
        }
    }
    for k in 0..n {
        let holders: Vec<u32> = sets.iter().filter(|(_, s)| s.contains(k)).map(|(c, _)| *c).collect();
        if holders.len() > 2 {
            bad.push(format!("index {k} lies in the sets of curves {holders:?}"));
        }
    }
    out.push(check(Constraint::IndexSets, bad, "heads distinct, set overlaps admissible"));

    if p.cycles.is_empty() {
        return out;
    }

    // (c)
    let sums: Vec<LatticeClass> = p
        .cycles
        .iter()
        .map(|cycle| {
            cycle.iter().fold(LatticeClass::zero(n).expect("rank >= 1"), |acc, &q| {
                acc.checked_add(classes[q]).expect("small coefficients")
            })
        })
        .collect();
    let mut bad = Vec::new();
    for (cycle, sum) in p.cycles.iter().zip(&sums) {
        let cid = ids[cycle[0]];
        if rep.torsion {
            if !sum.torsion2() || sum.coeffs().iter().any(|&x| x != -1) {
                bad.push(format!("cycle at {cid}: sum {sum} is not -K + F2"));
            }
            continue;
        }
        if sum.torsion2() {
            bad.push(format!("cycle at {cid}: untwisted assignment carries F2"));
        }
        if sum.coeffs().iter().any(|&x| x != 0 && x != -1) {
            bad.push(format!("cycle at {cid}: sum {sum} is not a negative sum"));
            continue;
        }
        let tail = sum.coeffs().iter().filter(|&&x| x == -1).count();
        if tail != n - cycle.len().min(n) || cycle.len() > n {
            bad.push(format!("cycle at {cid}: sum {sum} has {tail} terms, expected {}", n.saturating_sub(cycle.len())));
        }
        if cycle.len() >= 2 {
            let zeros: BTreeSet<usize> = (0..n).filter(|&k| sum.coeffs()[k] == 0).collect();
            let cycle_heads: BTreeSet<usize> = cycle
                .iter()
                .filter_map(|&q| match &rep.assignments[q].form {
                    NormalForm::TypeA { i, .. } => Some(*i),
                    _ => None,
                })
                .collect();
            if zeros != cycle_heads {
                bad.push(format!("cycle at {cid}: untouched indices {zeros:?} differ from heads {cycle_heads:?}"));
            }
        }
    }
    if let [a, b] = sums.as_slice() {
        if rep.torsion || a.coeffs().iter().zip(b.coeffs()).any(|(x, y)| x + y != -1) {
            bad.push("the two cycle classes are not complementary negative sums".into());
        }
    }
    out.push(check(Constraint::CycleClass, bad, "cycle classes in normal form"));

    // (d)
    if p.definite {
        let covered: BTreeSet<usize> = classes.iter().flat_map(|c| c.support().members().to_vec()).collect();
        let missing: Vec<usize> = (0..n).filter(|k| !covered.contains(k)).collect();
        let bad = if missing.is_empty() { vec![] } else { vec![format!("indices {missing:?} uncovered")] };
        out.push(check(Constraint::Covering, bad, "supports cover [0, n-1]"));
    } else {
        out.push(check(Constraint::Covering, vec![], "not applied: the form is not negative definite"));
    }

    // (e)
    let want = if rep.torsion { 2 * n as i64 } else { n as i64 };
    let mut bad = Vec::new();
    for (cycle, sum) in p.cycles.iter().zip(&sums) {
        let got = cycle.len() as i64 - intersect(sum, sum).unwrap_or(i64::MIN);
        if got != want {
            bad.push(format!("cycle at {}: #C - C^2 = {got}, expected {want}", ids[cycle[0]]));
        }
    }
    out.push(check(Constraint::SharpLaw, bad, "#C - C^2 law holds"));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeBWitness {
    pub classes: Vec<(u32, LatticeClass)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeBReport {
    pub hypothesis_met: bool,
    pub explanation: String,
    /// The enumerator only offers `L_i - L_I` to smooth rational curves.
    pub search_space_excludes_type_b: bool,
    /// `(-2L_i - L_I).(-2L_j - L_J) <= 0` for every pair at this rank, checked
    /// exhaustively (skipped above rank 6).
    pub type_b_pairs_never_meet: Option<bool>,
    /// An assignment using at least one `-2L_i - L_I` class that reproduces
    /// all intersection numbers, if one exists.
    pub local_witness: Option<TypeBWitness>,
}

pub fn type_b_exclusion_check(cfg: &CurveConfig) -> Result<TypeBReport> {
    let p = Problem::new(cfg, None)?;
    let n = p.n;
    let pairs_never_meet = (n <= 6).then(|| {
        let all: Vec<LatticeClass> = (0..n)
            .flat_map(|i| {
                let others = block(0, n) & !(1 << i);
                (0..1u64 << n).filter(move |m| m & !others == 0).map(move |m| {
                    LatticeClass::from_form(n, &NormalForm::TypeB { i, set: IndexSet::from_mask(m) })
                        .expect("valid form")
                })
            })
            .collect();
        all.iter().all(|a| all.iter().all(|b| intersect(a, b).expect("same rank") <= 0))
    });
    let external = p.cycles.iter().find_map(|cycle| {
        (0..p.ids.len()).filter(|q| !cycle.contains(q)).find_map(|q| {
            let meet: i64 = cycle.iter().map(|&c| p.target.get(q, c)).sum();
            (meet == 1).then_some((cycle[0], q))
        })
    });
    let Some((c0, e)) = external else {
        return Ok(TypeBReport {
            hypothesis_met: false,
            explanation: "skipped: no rational curve E with E.C = 1 for a cycle C".into(),
            search_space_excludes_type_b: true,
            type_b_pairs_never_meet: pairs_never_meet,
            local_witness: None,
        });
    };
    let witness = type_b_search(&p);
    Ok(TypeBReport {
        hypothesis_met: true,
        explanation: format!(
            "curve {} meets the cycle through curve {} once; type b classes are excluded from the search",
            p.ids[e], p.ids[c0]
        ),
        search_space_excludes_type_b: true,
        type_b_pairs_never_meet: pairs_never_meet,
        local_witness: witness,
    })
}

/// Backtracking over type a / type b classes for smooth curves and negative
/// sums for nodal curves, looking for one assignment with a type b class that
/// reproduces every intersection number.
fn type_b_search(p: &Problem) -> Option<TypeBWitness> {
    let n = p.n;
    let options: Vec<Vec<(LatticeClass, bool)>> = (0..p.ids.len())
        .map(|q| {
            let s = p.target.get(q, q);
            let mut v = Vec::new();
            match p.kinds[q] {
                CurveKind::SmoothRational => {
                    for i in 0..n {
                        let others = block(0, n) & !(1 << i);
                        for (size, is_b) in [(-s - 1, false), (-s - 4, true)] {
                            if size < 0 {
                                continue;
                            }
                            for m in subsets_of(others, size as usize) {
                                let set = IndexSet::from_mask(m);
                                let form = if is_b {
                                    NormalForm::TypeB { i, set }
                                } else {
                                    NormalForm::TypeA { i, set }
                                };
                                v.push((LatticeClass::from_form(n, &form).expect("valid"), is_b));
                            }
                        }
                    }
                }
                _ => {
                    for m in subsets_of(block(0, n), (-s).max(0) as usize) {
                        v.push((LatticeClass::negative_sum(n, &IndexSet::from_mask(m)).expect("valid"), false));
                    }
                    v.push((Choice::Neg { set: block(0, n) }.to_class(n), false));
                }
            }
            v
        })
        .collect();

    fn rec(
        p: &Problem,
        options: &[Vec<(LatticeClass, bool)>],
        chosen: &mut Vec<LatticeClass>,
        any_b: bool,
    ) -> Option<Vec<LatticeClass>> {
        let q = chosen.len();
        if q == options.len() {
            return any_b.then(|| chosen.clone());
        }
        for (c, is_b) in &options[q] {
            if intersect(c, c).ok() != Some(p.target.get(q, q)) {
                continue;
            }
            if chosen.iter().enumerate().all(|(r, d)| intersect(c, d).ok() == Some(p.target.get(q, r))) {
                chosen.push(c.clone());
                if let Some(w) = rec(p, options, chosen, any_b || *is_b) {
                    return Some(w);
                }
                chosen.pop();
            }
        }
        None
    }
    rec(p, &options, &mut Vec::new(), false)
        .map(|classes| TypeBWitness { classes: p.ids.iter().copied().zip(classes).collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Curve;
    use crate::families;

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    fn forms(rep: &Representation) -> Vec<NormalForm> {
        rep.assignments.iter().map(|a| a.form.clone()).collect()
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets_of(0b1011, 2), vec![0b0011, 0b1001, 0b1010]);
        assert_eq!(subsets_of(0b1011, 0), vec![0]);
        assert!(subsets_of(0b1, 2).is_empty());
        assert_eq!(subsets_of(0b111, 3), vec![0b111]);
    }

    #[test]
    fn choice_product_matches_lattice() {
        let n = 4;
        let cs = [
            Choice::A { head: 0, set: 0b0110 },
            Choice::A { head: 2, set: 0b1001 },
            Choice::Neg { set: 0b1110 },
            Choice::Neg { set: 0b0011 },
        ];
        for a in cs {
            for b in cs {
                assert_eq!(a.product(b), intersect(&a.to_class(n), &b.to_class(n)).unwrap());
            }
        }
    }

    #[test]
    fn two_cycle_of_minus_two_curves() {
        let e = enumerate(&families::rational_cycle(&[-2, -2]), DEFAULT_CAP, None).unwrap();
        assert_eq!(e.representations.len(), 1);
        assert_eq!(
            forms(&e.representations[0]),
            vec![NormalForm::TypeA { i: 0, set: set(&[1]) }, NormalForm::TypeA { i: 1, set: set(&[0]) }]
        );
        assert!(!e.torsion_phase);
    }

    #[test]
    fn singrat_three_is_unique() {
        let cfg = families::singrat(3, 2);
        let e = enumerate(&cfg, DEFAULT_CAP, None).unwrap();
        assert_eq!(e.representations.len(), 1);
        assert_eq!(
            forms(&e.representations[0]),
            vec![
                NormalForm::FullCycle { r: 1 },
                NormalForm::TypeA { i: 1, set: set(&[0]) },
                NormalForm::TypeA { i: 2, set: set(&[1]) },
            ]
        );
    }

    #[test]
    fn nodal_curve_of_square_zero() {
        let cfg = CurveConfig::new(1, vec![Curve::new(0, CurveKind::NodalRational, 0)], vec![]);
        let e = enumerate(&cfg, DEFAULT_CAP, None).unwrap();
        assert_eq!(e.representations.len(), 1);
        assert_eq!(forms(&e.representations[0]), vec![NormalForm::FullCycle { r: 1 }]);
    }

    #[test]
    fn odd_ih_rank_one_uses_torsion() {
        let cfg = CurveConfig::new(1, vec![Curve::new(0, CurveKind::NodalRational, -1)], vec![]);
        let e = enumerate(&cfg, DEFAULT_CAP, None).unwrap();
        assert!(e.torsion_phase);
        assert_eq!(e.representations.len(), 1);
        let class = &e.representations[0].assignments[0].class;
        assert_eq!(class.coeffs(), &[-1]);
        assert!(class.torsion2());
    }

    #[test]
    fn verify_examples() {
        let cfg = families::singrat(3, 2);
        let cls = |v: &[i64]| LatticeClass::new(v.to_vec()).unwrap();
        let mk = |d2: &[i64]| Representation {
            assignments: [cls(&[0, -1, -1]), cls(&[-1, 1, 0]), cls(d2)]
                .into_iter()
                .enumerate()
                .map(|(i, class)| CurveAssignment { curve: i as u32, form: classify_normal_form(&class), class })
                .collect(),
            torsion: false,
        };
        assert!(verify(&cfg, &mk(&[0, -1, 1])).unwrap().all_pass());
        let r = verify(&cfg, &mk(&[-1, 0, 1])).unwrap();
        assert!(!r.all_pass());
        assert_eq!(r.failures().next().unwrap().constraint, Constraint::Intersections);

        let empty = CurveConfig::new(1, vec![], vec![]);
        let r = verify(&empty, &Representation { assignments: vec![], torsion: false }).unwrap();
        assert!(r.all_pass());
    }

    #[test]
    fn enumerate_errors() {
        let chain = CurveConfig::new(
            3,
            vec![Curve::new(0, CurveKind::SmoothRational, -2), Curve::new(1, CurveKind::SmoothRational, -2)],
            vec![(0, 1, 1)],
        );
        assert!(matches!(enumerate(&chain, DEFAULT_CAP, None), Err(Error::Domain(_))));
        let big = CurveConfig::new(20, vec![Curve::new(0, CurveKind::NodalRational, -19)], vec![]);
        assert_eq!(enumerate(&big, DEFAULT_CAP, None).unwrap_err(), Error::CapExceeded { b2: 20, cap: 8 });
    }

    #[test]
    fn type_b_examples() {
        let r = type_b_exclusion_check(&families::singrat(3, 2)).unwrap();
        assert!(r.hypothesis_met);
        assert!(r.local_witness.is_none());
        assert_eq!(r.type_b_pairs_never_meet, Some(true));

        let r = type_b_exclusion_check(&families::rational_cycle(&[-2, -2, -2])).unwrap();
        assert!(!r.hypothesis_met);

        let r = type_b_exclusion_check(&families::rational_cycle(&[-2, -2])).unwrap();
        assert_eq!(r.type_b_pairs_never_meet, Some(true));
    }
}
