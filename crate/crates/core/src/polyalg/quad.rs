//! Elements `p + q*sqrt(D)` of a real quadratic field.
//!
//! Rational elements carry no radical (`D = 0` internally) and mix freely with
//! any field; combining two different radicals is an error.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::{format_rat, rat_to_f64, Rat};
use super::text::{parse_with, Algebra};
use crate::error::{Error, Result};


#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    p: Rat,
    q: Rat,
    d: u64,
}

fn squarefree_split(n: u64) -> (u64, u64) {
    // n = k^2 * s with s squarefree
    let (mut k, mut s, mut rest) = (1u64, 1u64, n);
    let mut f = 2u64;
    while f.saturating_mul(f) <= rest {
        let mut e = 0;
        while rest % f == 0 {
            rest /= f;
            e += 1;
        }
        k *= f.pow(e / 2);
        if e % 2 == 1 {
            s *= f;
        }
        f += 1;
    }
    (k, s * rest)
}

impl QuadExt {
    pub fn rational(p: Rat) -> QuadExt {
        QuadExt { p, q: Rat::zero(), d: 0 }
    }

    /// `p + q*sqrt(d)`; `d` must be squarefree and greater than 1 unless `q = 0`.
    pub fn new(p: Rat, q: Rat, d: u64) -> Result<QuadExt> {
        if q.is_zero() {
            return Ok(Self::rational(p));
        }
        let (k, s) = squarefree_split(d);
        if k != 1 || s <= 1 {
            return Err(Error::InvalidArgument(format!("radicand {d} is not squarefree and > 1")));
        }
        Ok(QuadExt { p, q, d })
    }

    /// `sqrt(r)` for a non-negative rational `r`.
    pub fn sqrt_of(r: &Rat) -> Result<QuadExt> {
        if r.is_negative() {
            return Err(Error::InvalidArgument(format!("sqrt of negative {}", format_rat(r))));
        }
        // sqrt(a/b) = sqrt(a*b)/b
        let n = r.numer() * r.denom();
        let n = n
            .to_u64()
            .ok_or_else(|| Error::InvalidArgument("radicand too large".into()))?;
        let (k, s) = squarefree_split(n);
        let coeff = Rat::new(BigInt::from(k), r.denom().clone());
        if s == 1 || n == 0 {
            Ok(Self::rational(if n == 0 { Rat::zero() } else { coeff }))
        } else {
            Ok(QuadExt { p: Rat::zero(), q: coeff, d: s })
        }
    }

    pub fn parse(s: &str) -> Result<QuadExt> {
        parse_with(&QuadAlgebra, s)
    }

    pub fn rational_part(&self) -> &Rat {
        &self.p
    }

    pub fn radical_part(&self) -> &Rat {
        &self.q
    }

    /// Radicand, or `None` for rational elements.
    pub fn radicand(&self) -> Option<u64> {
        (self.d != 0).then_some(self.d)
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    fn join(&self, other: &QuadExt) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::MixedRadicals(a, b)),
        }
    }

    fn make(p: Rat, q: Rat, d: u64) -> QuadExt {
        if q.is_zero() {
            Self::rational(p)
        } else {
            QuadExt { p, q, d }
        }
    }

    pub fn checked_add(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.join(o)?;
        Ok(Self::make(&self.p + &o.p, &self.q + &o.q, d))
    }

    pub fn checked_sub(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.join(o)?;
        Ok(Self::make(&self.p - &o.p, &self.q - &o.q, d))
    }

    pub fn checked_mul(&self, o: &QuadExt) -> Result<QuadExt> {
        let d = self.join(o)?;
        let dr = Rat::from_integer(BigInt::from(d));
        let p = &self.p * &o.p + &self.q * &o.q * dr;
        let q = &self.p * &o.q + &self.q * &o.p;
        Ok(Self::make(p, q, d))
    }

    pub fn checked_div(&self, o: &QuadExt) -> Result<QuadExt> {
        if o.is_zero() {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        self.checked_mul(&o.inverse())
    }

    pub fn conjugate(&self) -> QuadExt {
        Self::make(self.p.clone(), -&self.q, self.d)
    }

    /// Field norm `p^2 - q^2 D`.
    pub fn norm(&self) -> Rat {
        &self.p * &self.p - &self.q * &self.q * Rat::from_integer(BigInt::from(self.d))
    }

    fn inverse(&self) -> QuadExt {
        let n = self.norm();
        Self::make(&self.p / &n, -&self.q / &n, self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sp = sgn(&self.p);
        let sq = sgn(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        let p2 = &self.p * &self.p;
        let q2d = &self.q * &self.q * Rat::from_integer(BigInt::from(self.d));
        match p2.cmp(&q2d) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => 0, // impossible for squarefree D > 1
        }
    }

    pub fn cmp_exact(&self, o: &QuadExt) -> Result<Ordering> {
        Ok(self.checked_sub(o)?.signum().cmp(&0))
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.p) + rat_to_f64(&self.q) * (self.d as f64).sqrt()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.p)
    }
}

fn sgn(r: &Rat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Common radicand of a list of values (0 if all rational).
pub fn common_radicand(values: &[QuadExt]) -> Result<u64> {
    let mut acc = QuadExt::rational(Rat::zero());
    for v in values {
        acc.d = acc.join(v)?;
    }
    Ok(acc.d)
}

impl From<Rat> for QuadExt {
    fn from(r: Rat) -> Self {
        QuadExt::rational(r)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return f.write_str(&format_rat(&self.p));
        }
        let rad = format!("sqrt({})", self.d);
        let qabs = self.q.abs();
        let qpart = if qabs.is_one() { rad } else { format!("{}*{rad}", format_rat(&qabs)) };
        if self.p.is_zero() {
            if self.q.is_negative() {
                write!(f, "-{qpart}")
            } else {
                f.write_str(&qpart)
            }
        } else {
            let op = if self.q.is_negative() { '-' } else { '+' };
            write!(f, "{} {op} {qpart}", format_rat(&self.p))
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadExt({self})")
    }
}

// Field operations panic on mixed radicals; check points with
// `common_radicand` before evaluating.
impl crate::linalg::Field for QuadExt {
    fn zero() -> Self {
        QuadExt::rational(<Rat as Zero>::zero())
    }
    fn one() -> Self {
        QuadExt::rational(<Rat as One>::one())
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn from_rat(r: &Rat) -> Self {
        QuadExt::rational(r.clone())
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("mixed radicals")
    }
    fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("mixed radicals")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("mixed radicals")
    }
    fn neg(&self) -> Self {
        Self::make(-&self.p, -&self.q, self.d)
    }
    fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero");
        self.checked_div(other).expect("mixed radicals")
    }
}

struct QuadAlgebra;

impl Algebra for QuadAlgebra {
    type V = QuadExt;
    fn int(&self, n: &BigInt) -> QuadExt {
        QuadExt::rational(Rat::from_integer(n.clone()))
    }
    fn var(&self, name: &str) -> Result<QuadExt> {
        Err(Error::Parse(format!("unexpected name {name:?} in a number")))
    }
    fn add(&self, a: &QuadExt, b: &QuadExt) -> Result<QuadExt> {
        a.checked_add(b)
    }
    fn sub(&self, a: &QuadExt, b: &QuadExt) -> Result<QuadExt> {
        a.checked_sub(b)
    }
    fn mul(&self, a: &QuadExt, b: &QuadExt) -> Result<QuadExt> {
        a.checked_mul(b)
    }
    fn div(&self, a: &QuadExt, b: &QuadExt) -> Result<QuadExt> {
        a.checked_div(b)
    }
    fn neg(&self, a: &QuadExt) -> QuadExt {
        crate::linalg::Field::neg(a)
    }
    fn pow(&self, a: &QuadExt, n: u32) -> Result<QuadExt> {
        Ok(crate::linalg::Field::pow(a, n))
    }
    fn sqrt(&self, a: &QuadExt) -> Result<QuadExt> {
        match a.as_rational() {
            Some(r) => QuadExt::sqrt_of(r),
            None => Err(Error::Parse("nested radicals are not supported".into())),
        }
    }
}

/// Parse a comma-separated point such as `1,-1,(9+sqrt(55))/2`.
pub fn parse_point(s: &str) -> Result<Vec<QuadExt>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(QuadExt::parse(&s[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(QuadExt::parse(&s[start..])?);
    common_radicand(&out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat::{int, rat};

    #[test]
    fn arithmetic_in_q_sqrt55() {
        let a = QuadExt::parse("(9+sqrt(55))/2").unwrap();
        assert_eq!(a.rational_part(), &rat(9, 2));
        assert_eq!(a.radical_part(), &rat(1, 2));
        assert_eq!(a.radicand(), Some(55));
        let b = a.checked_mul(&a.conjugate()).unwrap();
        assert_eq!(b, QuadExt::rational(rat(81 - 55, 4)));
        let c = a.checked_div(&a).unwrap();
        assert_eq!(c, QuadExt::rational(int(1)));
    }

    #[test]
    fn sign_and_simplification() {
        assert_eq!(QuadExt::parse("1701+229*sqrt(55)").unwrap().signum(), 1);
        assert_eq!(QuadExt::parse("8 - sqrt(55)").unwrap().signum(), 1);
        assert_eq!(QuadExt::parse("7 - sqrt(55)").unwrap().signum(), -1);
        assert_eq!(QuadExt::parse("sqrt(8)").unwrap(), QuadExt::new(int(0), int(2), 2).unwrap());
        assert_eq!(QuadExt::parse("sqrt(9/4)").unwrap(), QuadExt::rational(rat(3, 2)));
        assert!(matches!(
            QuadExt::parse("sqrt(2)+sqrt(3)"),
            Err(Error::MixedRadicals(2, 3))
        ));
    }

    #[test]
    fn display_round_trip() {
        for s in ["-1/2*sqrt(55)", "9/2 + 1/2*sqrt(55)", "-23/2 - 3/2*sqrt(55)", "3", "sqrt(2)"] {
            let v = QuadExt::parse(s).unwrap();
            assert_eq!(QuadExt::parse(&v.to_string()).unwrap(), v, "{s}");
        }
        let pt = parse_point("1,-1,(9+sqrt(55))/2,-(23+3*sqrt(55))/2").unwrap();
        assert_eq!(pt.len(), 4);
    }
}
