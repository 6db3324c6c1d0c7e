//! Exact dense linear algebra over the scalar fields used in the crate.

use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::polyalg::Rat;

/// Field operations needed for evaluation and elimination.
pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rat(r: &Rat) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on division by zero.
    fn div(&self, other: &Self) -> Self;

    fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Self {
        assert!(!Zero::is_zero(other), "division by zero");
        self / other
    }
}

impl Field for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_rat(r: &Rat) -> Self {
        crate::polyalg::rat::rat_to_f64(r)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

/// Determinant by Gaussian elimination; exact fields only need a nonzero pivot.
pub fn determinant<F: Field>(matrix: &[Vec<F>]) -> F {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "matrix must be square");
    let mut a: Vec<Vec<F>> = matrix.to_vec();
    let mut det = F::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = det.neg();
        }
        let p = a[col][col].clone();
        det = det.mul(&p);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].div(&p);
            for c in col..n {
                let v = a[r][c].sub(&factor.mul(&a[col][c]));
                a[r][c] = v;
            }
        }
    }
    det
}

/// Solve `A x = b` for square nonsingular `A`; `None` if singular.
pub fn solve<F: Field>(matrix: &[Vec<F>], rhs: &[F]) -> Option<Vec<F>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n);
    let mut a: Vec<Vec<F>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(piv, col);
        let p = a[col][col].clone();
        for c in col..=n {
            a[col][c] = a[col][c].div(&p);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=n {
                let v = a[r][c].sub(&factor.mul(&a[col][c]));
                a[r][c] = v;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Some solution of a (possibly rectangular) system `A x = b`, with free
/// variables set to zero; `None` if inconsistent.
pub fn solve_any<F: Field>(matrix: &[Vec<F>], rhs: &[F]) -> Option<Vec<F>> {
    let rows = matrix.len();
    assert_eq!(rhs.len(), rows);
    let cols = matrix.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<F>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(piv, rank);
        let p = a[rank][col].clone();
        for c in col..=cols {
            a[rank][c] = a[rank][c].div(&p);
        }
        for r in 0..rows {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..=cols {
                let v = a[r][c].sub(&factor.mul(&a[rank][c]));
                a[r][c] = v;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if a[rank..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![F::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][cols].clone();
    }
    Some(x)
}

/// Rank of a (not necessarily square) matrix.
pub fn rank<F: Field>(matrix: &[Vec<F>]) -> usize {
    let mut a: Vec<Vec<F>> = matrix.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(piv, rank);
        let p = a[rank][col].clone();
        for r in rank + 1..rows {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].div(&p);
            for c in col..cols {
                let v = a[r][c].sub(&factor.mul(&a[rank][c]));
                a[r][c] = v;
            }
        }
        rank += 1;
    }
    rank
}

pub fn transpose<F: Clone>(matrix: &[Vec<F>]) -> Vec<Vec<F>> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, |r| r.len());
    (0..cols)
        .map(|c| (0..rows).map(|r| matrix[r][c].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat::{int, rat};

    #[test]
    fn det_and_solve_small() {
        let m = vec![vec![int(2), int(1)], vec![int(1), int(3)]];
        assert_eq!(determinant(&m), int(5));
        let x = solve(&m, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let singular = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(determinant(&singular), int(0));
        assert!(solve(&singular, &[int(1), int(1)]).is_none());
        assert_eq!(rank(&singular), 1);
    }

    #[test]
    fn row_swap_flips_sign() {
        let m = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert_eq!(determinant(&m), int(-1));
    }
}
