//! Slow reference implementations used to cross-check the production paths.
//! Each one follows the textbook definition and avoids the shortcuts taken
//! elsewhere in the crate.

use std::collections::{BTreeSet, HashMap};

use crate::config::{CurveConfig, CurveKind};
use crate::enumerate::{check_all, Choice, Problem, Representation};
use crate::error::Result;
use crate::linalg::{Definiteness, IntMatrix};

/// Determinant by cofactor expansion along successive rows, memoised on the
/// set of columns still available.
pub fn cofactor_determinant(m: &IntMatrix) -> i128 {
    fn expand(m: &IntMatrix, row: usize, cols: u32, memo: &mut HashMap<u32, i128>) -> i128 {
        if row == m.size() {
            return 1;
        }
        if let Some(&v) = memo.get(&cols) {
            return v;
        }
        let mut acc = 0i128;
        let mut sign = 1i128;
        for j in 0..m.size() {
            if cols >> j & 1 == 0 {
                continue;
            }
            let a = m.get(row, j) as i128;
            if a != 0 {
                acc += sign * a * expand(m, row + 1, cols & !(1 << j), memo);
            }
            sign = -sign;
        }
        memo.insert(cols, acc);
        acc
    }
    assert!(m.size() < 32, "cofactor oracle supports size < 32");
    expand(m, 0, ((1u64 << m.size()) - 1) as u32, &mut HashMap::new())
}

/// Negative (semi)definiteness from the signs of every principal minor of `-M`.
pub fn definiteness_by_principal_minors(m: &IntMatrix) -> Definiteness {
    let n = m.size();
    let neg = IntMatrix::new(m.rows().iter().map(|r| r.iter().map(|x| -x).collect()).collect())
        .expect("square");
    let mut all_positive = true;
    let mut all_nonnegative = true;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        let d = cofactor_determinant(&neg.principal(&idx));
        all_positive &= d > 0;
        all_nonnegative &= d >= 0;
    }
    if all_positive {
        Definiteness::Definite
    } else if all_nonnegative {
        Definiteness::Semidefinite
    } else {
        Definiteness::Neither
    }
}

/// Every assignment of a type a class (any index set) to each smooth curve
/// and any negative sum to each nodal curve, filtered at the leaves only.
/// Returns the canonical forms, sorted.
pub fn brute_force_enumerate(cfg: &CurveConfig) -> Result<Vec<Representation>> {
    let p = Problem::new(cfg, None)?;
    p.check_shape()?;
    let found = brute(&p, false);
    let (found, torsion) = if found.is_empty() && p.cycles.len() == 1 { (brute(&p, true), true) } else { (found, false) };
    Ok(found.iter().map(|c| p.representation(c, torsion)).collect())
}

fn brute(p: &Problem, torsion: bool) -> BTreeSet<Vec<Choice>> {
    let n = p.n;
    let full = (1u64 << n) - 1;
    let options: Vec<Vec<Choice>> = p
        .kinds
        .iter()
        .map(|k| match k {
            CurveKind::SmoothRational => (0..n)
                .flat_map(|head| {
                    (0..=full).filter(move |s| s >> head & 1 == 0).map(move |set| Choice::A { head, set })
                })
                .collect(),
            _ => (0..=full).map(|set| Choice::Neg { set }).collect(),
        })
        .collect();
    let count = options.len();
    let mut found = BTreeSet::new();
    if options.iter().any(Vec::is_empty) {
        return found;
    }
    let mut idx = vec![0usize; count];
    loop {
        let choice: Vec<Choice> = idx.iter().zip(&options).map(|(&i, o)| o[i]).collect();
        let matches = (0..count).all(|a| (a..count).all(|b| choice[a].product(choice[b]) == p.target.get(a, b)));
        if matches && check_all(p, &p.representation(&choice, torsion)).iter().all(|c| c.passed) {
            found.insert(canonicalize_exhaustive(p, &choice));
        }
        let mut k = 0;
        loop {
            if k == count {
                return found;
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Lexicographically least relabelling over every basis permutation that
/// sends the tail of the first cycle to the top indices.
pub(crate) fn canonicalize_exhaustive(p: &Problem, choices: &[Choice]) -> Vec<Choice> {
    let n = p.n;
    let tail = p.tail(choices);
    let head_src: Vec<usize> = (0..n).filter(|&k| tail >> k & 1 == 0).collect();
    let tail_src: Vec<usize> = (0..n).filter(|&k| tail >> k & 1 == 1).collect();
    let h = head_src.len();
    let mut best: Option<(Vec<u8>, Vec<Choice>)> = None;
    let mut perm = vec![0; n];
    for hp in permutations(h) {
        for (k, &src) in head_src.iter().enumerate() {
            perm[src] = hp[k];
        }
        for tp in permutations(n - h) {
            for (k, &src) in tail_src.iter().enumerate() {
                perm[src] = h + tp[k];
            }
            let permuted: Vec<Choice> = choices.iter().map(|c| c.permuted(&perm)).collect();
            let key = descriptor_key(&permuted, n);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, permuted));
            }
        }
    }
    best.map(|(_, c)| c).unwrap_or_default()
}

/// Lexicographic key: per curve a tag, the head, then the sorted index set,
/// each entry shifted by one and padded with zeros so that a proper prefix
/// sorts first.
fn descriptor_key(choices: &[Choice], n: usize) -> Vec<u8> {
    let mut key = Vec::with_capacity(choices.len() * (n + 2));
    for c in choices {
        let (tag, head, set) = match *c {
            Choice::A { head, set } => (0, head as u8 + 1, set),
            Choice::Neg { set } => (1, 0, set),
        };
        key.push(tag);
        key.push(head);
        let mut written = 0;
        for k in 0..n {
            if set >> k & 1 == 1 {
                key.push(k as u8 + 1);
                written += 1;
            }
        }
        key.extend(std::iter::repeat_n(0, n - written));
    }
    key
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(k), &mut vec![false; k], &mut out);
    out
}
