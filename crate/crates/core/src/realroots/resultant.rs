//! Resultants by the subresultant pseudo-remainder sequence.

use num_traits::{One, Zero};

use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::polyalg::{MultiPoly, Rat};

/// Integral domain with exact division, enough for subresultant sequences.
pub trait Domain: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient; the subresultant theory guarantees divisibility.
    fn div_exact(&self, o: &Self) -> Self;

    fn pow(&self, n: usize) -> Self {
        let mut acc = self.one_like();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Domain for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl Domain for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(self.ring())
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.ring())
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        MultiPoly::div_exact(self, o).expect("exact division in subresultant sequence")
    }
}

fn trim<D: Domain>(mut v: Vec<D>) -> Vec<D> {
    while v.last().is_some_and(Domain::is_zero) {
        v.pop();
    }
    v
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem<D: Domain>(a: &[D], b: &[D]) -> Vec<D> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut e = a.len() - b.len() + 1;
    while r.len() >= b.len() {
        let lr = r.last().expect("nonempty").clone();
        let shift = r.len() - b.len();
        let mut next: Vec<D> = r.iter().map(|c| c.mul(lb)).collect();
        for (j, bj) in b.iter().enumerate() {
            next[shift + j] = next[shift + j].sub(&lr.mul(bj));
        }
        next.pop();
        r = trim(next);
        e -= 1;
    }
    let f = lb.pow(e);
    r.iter().map(|c| c.mul(&f)).collect()
}

/// Resultant of two polynomials given by ascending coefficient lists.
pub fn resultant_coeffs<D: Domain>(a: &[D], b: &[D]) -> Result<D> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    let sample = a.first().or(b.first()).ok_or_else(|| Error::InvalidArgument("resultant of zero polynomials".into()))?.clone();
    if a.is_empty() || b.is_empty() {
        return Ok(sample.zero_like());
    }
    let mut s = sample.one_like();
    if a.len() < b.len() {
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s = s.neg();
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.len() == 1 {
        return Ok(s.mul(&b[0].pow(a.len() - 1)));
    }
    let mut g = sample.one_like();
    let mut h = sample.one_like();
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = s.neg();
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return Ok(sample.zero_like());
        }
        let div = g.mul(&h.pow(delta));
        a = b;
        b = r.iter().map(|c| c.div_exact(&div)).collect();
        g = a.last().expect("nonempty").clone();
        h = if delta == 0 { h } else { g.pow(delta).div_exact(&h.pow(delta - 1)) };
        if b.len() == 1 {
            let da = a.len() - 1;
            let hh = b[0].pow(da).div_exact(&h.pow(da - 1));
            return Ok(s.mul(&hh));
        }
    }
}

/// Resultant of two rational univariate polynomials.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<Rat> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::InvalidArgument("resultant of zero polynomials".into()));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(Rat::zero());
    }
    resultant_coeffs(p.coeffs(), q.coeffs())
}

/// Resultant of `p` and `q` with respect to ring variable `var`; the result
/// does not involve `var`.
pub fn resultant_in(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly> {
    let split = |f: &MultiPoly| -> Vec<MultiPoly> {
        let mut cs: Vec<MultiPoly> = Vec::new();
        for (m, c) in f.terms() {
            let (e, rest) = m.split_var(var);
            let e = e as usize;
            if cs.len() <= e {
                cs.resize(e + 1, MultiPoly::zero(f.ring()));
            }
            cs[e] = &cs[e] + &MultiPoly::monomial(f.ring(), rest, c.clone());
        }
        cs
    };
    if p.ring() != q.ring() {
        return Err(Error::RingMismatch(p.ring().describe(), q.ring().describe()));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(MultiPoly::zero(p.ring()));
    }
    resultant_coeffs(&split(p), &split(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_poly, Ring};

    #[test]
    fn small_resultants() {
        let r = |a: &[i64], b: &[i64]| resultant(&UniPoly::from_ints(a), &UniPoly::from_ints(b)).unwrap();
        assert_eq!(r(&[-1, 0, 1], &[-1, 1]), Rat::zero());
        assert_eq!(r(&[-2, 0, 1], &[-3, 0, 1]), Rat::one());
        assert_eq!(r(&[5], &[1, 2, 3]), Rat::from_integer(25.into()));
    }

    #[test]
    fn symbolic_linear() {
        let ring = Ring::new(["x", "a", "b"]).unwrap();
        let p = parse_poly(&ring, "x - a").unwrap();
        let q = parse_poly(&ring, "x - b").unwrap();
        assert_eq!(resultant_in(&p, &q, 0).unwrap(), parse_poly(&ring, "a - b").unwrap());
    }
}
