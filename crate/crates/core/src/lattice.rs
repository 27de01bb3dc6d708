//! The second cohomology lattice of a class VII surface in an exceptional basis.
//!
//! A class is an integer vector `(a_0, ..., a_{n-1})` standing for
//! `a_0 L_0 + ... + a_{n-1} L_{n-1}`, where the `L_i` are exceptional line
//! bundles with `L_j . L_k = -delta_jk`. The canonical class is
//! `K = L_0 + ... + L_{n-1}`. An optional order-two flat twist is carried as a
//! flag: it takes part in equality but never in intersection numbers.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer class in the exceptional basis, plus an order-two torsion flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeClass {
    coeffs: Vec<i64>,
    torsion2: bool,
}

impl LatticeClass {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("lattice rank must be at least 1".into()));
        }
        Ok(Self { coeffs, torsion2: false })
    }

    pub fn with_torsion(mut self, torsion2: bool) -> Self {
        self.torsion2 = torsion2;
        self
    }

    pub fn zero(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    /// The basis element `E_i` (the class of `L_i`).
    pub fn basis(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::Domain(format!("basis index {i} outside [0, {n})")));
        }
        let mut coeffs = vec![0; n];
        coeffs[i] = 1;
        Self::new(coeffs)
    }

    /// `L_i - L_I`.
    pub fn type_a(n: usize, i: usize, set: &IndexSet) -> Result<Self> {
        Self::from_form(n, &NormalForm::TypeA { i, set: set.clone() })
    }

    /// `-(L_r + ... + L_{n-1})`; `r = n` gives the zero class.
    pub fn full_cycle(n: usize, r: usize) -> Result<Self> {
        Self::from_form(n, &NormalForm::FullCycle { r })
    }

    /// `-L_T` for an arbitrary index set `T`.
    pub fn negative_sum(n: usize, set: &IndexSet) -> Result<Self> {
        set.check_within(n)?;
        let mut coeffs = vec![0; n];
        for &t in set.members() {
            coeffs[t] = -1;
        }
        Self::new(coeffs)
    }

    /// Rebuilds the class described by a normal form.
    pub fn from_form(n: usize, form: &NormalForm) -> Result<Self> {
        let mut coeffs = vec![0; n];
        match form {
            NormalForm::TypeA { i, set } | NormalForm::TypeB { i, set } => {
                set.check_within(n)?;
                if *i >= n || set.contains(*i) {
                    return Err(Error::Domain(format!("index {i} invalid for set {set}")));
                }
                coeffs[*i] = if matches!(form, NormalForm::TypeA { .. }) { 1 } else { -2 };
                for &j in set.members() {
                    coeffs[j] = -1;
                }
            }
            NormalForm::FullCycle { r } => {
                if *r > n {
                    return Err(Error::Domain(format!("cycle cutoff {r} exceeds rank {n}")));
                }
                for c in coeffs.iter_mut().skip(*r) {
                    *c = -1;
                }
            }
            NormalForm::Other => {
                return Err(Error::Domain("cannot rebuild a class from `Other`".into()));
            }
        }
        Self::new(coeffs)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn torsion2(&self) -> bool {
        self.torsion2
    }

    /// Positions with a nonzero coefficient.
    pub fn support(&self) -> IndexSet {
        IndexSet::from_iter_unchecked(
            self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i),
        )
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_rank(self, other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("class addition")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs, torsion2: self.torsion2 ^ other.torsion2 })
    }

    pub fn checked_scale(&self, k: i64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_mul(k).ok_or(Error::Overflow("class scaling")))
            .collect::<Result<Vec<_>>>()?;
        // F_2 has order two.
        Ok(Self { coeffs, torsion2: self.torsion2 && k % 2 != 0 })
    }

    /// Applies a renumbering of the basis: position `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut coeffs = vec![0; self.coeffs.len()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[perm[i]] = c;
        }
        Self { coeffs, torsion2: self.torsion2 }
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if wrote { "+" } else { "" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}L{i}")?;
            } else {
                write!(f, "{sign}{mag}L{i}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        if self.torsion2 {
            write!(f, "+F2")?;
        }
        Ok(())
    }
}

fn same_rank(a: &LatticeClass, b: &LatticeClass) -> Result<()> {
    if a.rank() != b.rank() {
        return Err(Error::Dimension { expected: a.rank(), found: b.rank() });
    }
    Ok(())
}

/// Sorted set of distinct basis indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Domain("index set has duplicate members".into()));
        }
        Ok(Self(members))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    fn from_iter_unchecked(it: impl Iterator<Item = usize>) -> Self {
        Self(it.collect())
    }

    pub fn from_mask(mask: u64) -> Self {
        Self((0..64).filter(|b| mask >> b & 1 == 1).collect())
    }

    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | 1 << i)
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&m) if m >= n => Err(Error::Domain(format!("index {m} outside [0, {n})"))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Normal forms of classes of rational curves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum NormalForm {
    /// `L_i - L_I`, `i` not in `I`.
    TypeA { i: usize, set: IndexSet },
    /// `-2 L_i - L_I`, `i` not in `I`.
    TypeB { i: usize, set: IndexSet },
    /// `-(L_r + ... + L_{n-1})`, `0 <= r <= n`.
    FullCycle { r: usize },
    Other,
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::TypeA { i, set } if set.is_empty() => write!(f, "L{i}"),
            NormalForm::TypeA { i, set } => write!(f, "L{i}-L{set}"),
            NormalForm::TypeB { i, set } if set.is_empty() => write!(f, "-2L{i}"),
            NormalForm::TypeB { i, set } => write!(f, "-2L{i}-L{set}"),
            NormalForm::FullCycle { r } => write!(f, "-(L{r}+...)[r={r}]"),
            NormalForm::Other => write!(f, "other"),
        }
    }
}

/// `a . b = -sum a_i b_i`. Torsion is invisible to the form.
pub fn intersect(a: &LatticeClass, b: &LatticeClass) -> Result<i64> {
    same_rank(a, b)?;
    let mut acc: i128 = 0;
    for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
        acc = acc
            .checked_sub(i128::from(*x) * i128::from(*y))
            .ok_or(Error::Overflow("intersection"))?;
    }
    i64::try_from(acc).map_err(|_| Error::Overflow("intersection"))
}

/// `K = L_0 + ... + L_{n-1}`.
pub fn canonical_class(n: usize) -> Result<LatticeClass> {
    if n == 0 {
        return Err(Error::Domain("canonical class needs n >= 1".into()));
    }
    LatticeClass::new(vec![1; n])
}

pub fn classify_normal_form(c: &LatticeClass) -> NormalForm {
    let coeffs = c.coeffs();
    let small = |x: i64| x == 0 || x == -1;
    let lead = |target: i64| {
        let mut hits = coeffs.iter().enumerate().filter(|(_, &x)| x == target);
        match (hits.next(), hits.next()) {
            (Some((i, _)), None) if coeffs.iter().all(|&x| x == target || small(x)) => Some(i),
            _ => None,
        }
    };
    let minus_ones = || {
        IndexSet::from_iter_unchecked(
            coeffs.iter().enumerate().filter(|(_, &x)| x == -1).map(|(i, _)| i),
        )
    };
    if let Some(i) = lead(1) {
        return NormalForm::TypeA { i, set: minus_ones() };
    }
    if let Some(i) = lead(-2) {
        return NormalForm::TypeB { i, set: minus_ones() };
    }
    if coeffs.iter().all(|&x| small(x)) {
        let r = coeffs.iter().rposition(|&x| x == 0).map_or(0, |p| p + 1);
        if coeffs[r..].iter().all(|&x| x == -1) && coeffs[..r].iter().all(|&x| x == 0) {
            return NormalForm::FullCycle { r };
        }
    }
    NormalForm::Other
}

/// Self-intersection, degree against `K`, and arithmetic genus of a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassGeometry {
    pub self_int: i64,
    pub k_degree: i64,
    #[serde(serialize_with = "crate::report::ser_ratio64")]
    pub arithmetic_genus: Rational64,
}

pub fn class_geometry(c: &LatticeClass) -> Result<ClassGeometry> {
    let k = canonical_class(c.rank())?;
    let self_int = intersect(c, c)?;
    let k_degree = intersect(&k, c)?;
    let arithmetic_genus = Rational64::new(k_degree + self_int, 2) + 1;
    Ok(ClassGeometry { self_int, k_degree, arithmetic_genus })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(v: &[i64]) -> LatticeClass {
        LatticeClass::new(v.to_vec()).unwrap()
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn intersect_examples() {
        let e0 = LatticeClass::basis(1, 0).unwrap();
        assert_eq!(intersect(&e0, &e0).unwrap(), -1);
        let k = canonical_class(3).unwrap();
        assert_eq!(intersect(&k, &k).unwrap(), -3);
        assert_eq!(intersect(&class(&[0, -1, -1]), &class(&[-1, 1, 0])).unwrap(), 1);
    }

    #[test]
    fn intersect_rank_mismatch() {
        let err = intersect(&class(&[1, 0]), &class(&[1])).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 2, found: 1 });
    }

    #[test]
    fn torsion_is_invisible_to_the_form_but_not_to_equality() {
        let a = class(&[-1, -1]);
        let b = a.clone().with_torsion(true);
        assert_ne!(a, b);
        assert_eq!(intersect(&a, &a).unwrap(), intersect(&b, &b).unwrap());
    }

    #[test]
    fn canonical_class_examples() {
        assert_eq!(canonical_class(1).unwrap().coeffs(), &[1]);
        assert_eq!(canonical_class(3).unwrap().coeffs(), &[1, 1, 1]);
        let k5 = canonical_class(5).unwrap();
        assert_eq!(intersect(&k5, &k5).unwrap(), -5);
        assert!(matches!(canonical_class(0), Err(Error::Domain(_))));
    }

    #[test]
    fn normal_form_examples() {
        assert_eq!(
            classify_normal_form(&class(&[1, -1, 0])),
            NormalForm::TypeA { i: 0, set: set(&[1]) }
        );
        assert_eq!(
            classify_normal_form(&class(&[-2, -1, 0])),
            NormalForm::TypeB { i: 0, set: set(&[1]) }
        );
        assert_eq!(classify_normal_form(&class(&[0, -1, -1])), NormalForm::FullCycle { r: 1 });
        assert_eq!(classify_normal_form(&class(&[0, 0, 0])), NormalForm::FullCycle { r: 3 });
        assert_eq!(classify_normal_form(&class(&[0, 0, -1])), NormalForm::FullCycle { r: 2 });
        assert_eq!(classify_normal_form(&class(&[0, -1, 0])), NormalForm::Other);
        assert_eq!(classify_normal_form(&class(&[1, 1, 0])), NormalForm::Other);
        assert_eq!(classify_normal_form(&class(&[-1, -1, -1])), NormalForm::FullCycle { r: 0 });
    }

    #[test]
    fn geometry_examples() {
        let g = class_geometry(&class(&[1, -1, -1])).unwrap();
        assert_eq!((g.self_int, g.k_degree), (-3, 1));
        assert_eq!(g.arithmetic_genus, Rational64::from_integer(0));

        let g = class_geometry(&class(&[1, 0, 0])).unwrap();
        assert_eq!((g.self_int, g.k_degree), (-1, -1));
        assert_eq!(g.arithmetic_genus, Rational64::from_integer(0));

        let g = class_geometry(&canonical_class(4).unwrap()).unwrap();
        assert_eq!((g.self_int, g.k_degree), (-4, -4));
        assert_eq!(g.arithmetic_genus, Rational64::from_integer(-3));
    }

    #[test]
    fn from_form_rejects_bad_input() {
        assert!(LatticeClass::type_a(3, 1, &set(&[1])).is_err());
        assert!(LatticeClass::full_cycle(2, 3).is_err());
        assert!(LatticeClass::from_form(2, &NormalForm::Other).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(class(&[1, -1, -2]).to_string(), "L0-L1-2L2");
        assert_eq!(class(&[0, 0]).with_torsion(true).to_string(), "0+F2");
    }
}
