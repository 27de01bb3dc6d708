//! Exact integer matrices: fraction-free elimination, determinants, linear
//! solves over the rationals and definiteness verdicts.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Square integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::Dimension { expected: n, found: bad.len() });
        }
        Ok(Self { rows })
    }

    pub fn zeros(n: usize) -> Self {
        Self { rows: vec![vec![0; n]; n] }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    /// Principal submatrix on the given index list.
    pub fn principal(&self, idx: &[usize]) -> Self {
        Self { rows: idx.iter().map(|&i| idx.iter().map(|&j| self.rows[i][j]).collect()).collect() }
    }

    fn big(&self) -> Vec<Vec<BigInt>> {
        self.rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// Determinant by Bareiss elimination with row pivoting.
    pub fn determinant(&self) -> BigInt {
        let n = self.size();
        if n == 0 {
            return BigInt::from(1);
        }
        let mut a = self.big();
        match bareiss(&mut a, n) {
            Some(sign) => {
                let d = a[n - 1][n - 1].clone();
                if sign { -d } else { d }
            }
            None => BigInt::zero(),
        }
    }

    /// `x^T M y` over the rationals.
    pub fn bilinear(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &m) in row.iter().enumerate() {
                if m != 0 {
                    acc += &x[i] * &y[j] * BigRational::from_integer(BigInt::from(m));
                }
            }
        }
        acc
    }

    /// `M x` over the rationals.
    pub fn apply(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(&m, _)| m != 0)
                    .fold(BigRational::zero(), |acc, (&m, xi)| {
                        acc + xi * BigRational::from_integer(BigInt::from(m))
                    })
            })
            .collect()
    }

    /// Leading principal minors `det M[0..k, 0..k]` for `k = 1..=n`, via
    /// Bareiss without pivoting. Stops (returning the minors so far plus a
    /// zero) at the first vanishing minor.
    pub fn leading_minors(&self) -> Vec<BigInt> {
        let n = self.size();
        let mut a = self.big();
        let mut out = Vec::with_capacity(n);
        let mut prev = BigInt::from(1);
        for k in 0..n {
            let pivot = a[k][k].clone();
            out.push(pivot.clone());
            if pivot.is_zero() {
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &pivot - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = pivot;
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r:?}")?;
        }
        write!(f, "]")
    }
}

/// In-place Bareiss elimination on the leading `n` columns of `a` (which may
/// carry extra augmented columns). Returns whether an odd number of row swaps
/// happened, or `None` when the leading block is singular.
fn bareiss(a: &mut [Vec<BigInt>], n: usize) -> Option<bool> {
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::from(1);
    let mut odd = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            let p = (k + 1..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, p);
            odd = !odd;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..width {
                let v = (&a[i][j] * &pivot - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    Some(odd)
}

/// Solves `M x = rhs` exactly. `None` when `M` is singular.
pub fn solve(m: &IntMatrix, rhs: &[BigInt]) -> Result<Option<Vec<BigRational>>> {
    let n = m.size();
    if rhs.len() != n {
        return Err(Error::Dimension { expected: n, found: rhs.len() });
    }
    let mut a: Vec<Vec<BigInt>> = m
        .rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| row.iter().map(|&x| BigInt::from(x)).chain([b.clone()]).collect())
        .collect();
    if bareiss(&mut a, n).is_none() {
        return Ok(None);
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(a[i][i].clone());
    }
    Ok(Some(x))
}

/// Verdict on the sign behaviour of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    /// Negative definite.
    Definite,
    /// Negative semidefinite and singular.
    Semidefinite,
    Neither,
}

/// Negative definiteness by Sylvester's criterion on `-M`, with a
/// Schur-complement sweep deciding the semidefinite case.
pub fn is_negative_definite(m: &IntMatrix) -> Result<Definiteness> {
    if !m.is_symmetric() {
        return Err(Error::Domain("matrix is not symmetric".into()));
    }
    let n = m.size();
    let minors = m.leading_minors();
    // Leading minors of -M are (-1)^k times those of M.
    let sylvester = minors.len() == n
        && minors.iter().enumerate().all(|(k, d)| {
            let neg = (k + 1) % 2 == 1;
            if neg { d.is_negative() } else { d.is_positive() }
        });
    if sylvester {
        return Ok(Definiteness::Definite);
    }
    if negated_is_psd(m) {
        Ok(Definiteness::Semidefinite)
    } else {
        Ok(Definiteness::Neither)
    }
}

fn negated_is_psd(m: &IntMatrix) -> bool {
    let n = m.size();
    let mut a: Vec<Vec<BigRational>> = m
        .rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(-x))).collect())
        .collect();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            if a[k][k + 1..].iter().any(|x| !x.is_zero()) {
                return false;
            }
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            let (top, rest) = a.split_at_mut(i);
            for (x, y) in rest[0][k + 1..].iter_mut().zip(&top[k][k + 1..]) {
                *x = &*x - &f * y;
            }
        }
    }
    true
}
