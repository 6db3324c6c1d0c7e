use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyalg::rat::{format_rat, parse_rat};
use crate::polyalg::{parse_poly, MultiPoly, Rat, Ring};

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Rat::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `c * x^n`
    pub fn monomial(c: Rat, n: usize) -> Self {
        let mut v = vec![Rat::zero(); n + 1];
        v[n] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let cs: Vec<f64> = self.coeffs.iter().map(crate::polyalg::rat::rat_to_f64).collect();
        cs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// Exact sign at `x` (faster than `eval` for dyadic points: integer Horner).
    pub fn sign_at(&self, x: &Rat) -> i32 {
        if self.is_zero() {
            return 0;
        }
        let (num, den) = (x.numer(), x.denom());
        let n = self.coeffs.len() - 1;
        let l = if self.coeffs.iter().all(|c| c.is_integer()) {
            BigInt::one()
        } else {
            crate::polyalg::rat::denom_lcm(self.coeffs.iter())
        };
        // sum c_i num^i den^(n-i), times positive lcm
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        let mut terms = Vec::with_capacity(n + 1);
        for _ in 0..=n {
            terms.push(den_pow.clone());
            den_pow *= den;
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            let ci = if l.is_one() { c.numer().clone() } else { (c * Rat::from_integer(l.clone())).to_integer() };
            acc = acc * num + ci * &terms[n - i];
        }
        match acc.sign() {
            num_bigint::Sign::Plus => 1,
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(Rat::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &UniPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or_else(|| Error::InvalidArgument("division by zero polynomial".into()))?;
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    /// Divide by the absolute value of the leading coefficient (keeps signs).
    pub fn normalize_positive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rat::one() / self.leading().abs()))
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn primitive_positive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = crate::polyalg::rat::denom_lcm(self.coeffs.iter());
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| num_integer::Integer::gcd(&g, c));
        Self::new(ints.into_iter().map(|c| Rat::from_integer(c / &g)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rat::one() / self.leading()))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r.normalize_positive();
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("nonzero gcd").0
    }

    /// Divide out `x^k` for the largest `k` with `x^k | self`.
    pub fn strip_x_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Self::new(self.coeffs[k..].to_vec()))
    }

    /// Parse either a list of coefficients `c0 c1 ... cn` (whitespace or
    /// comma separated, `#` comments allowed) or a symbolic polynomial in `x`.
    pub fn parse(text: &str) -> Result<Self> {
        let body: String = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .collect::<Vec<_>>()
            .join(" ");
        let body = body.trim();
        if body.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let tokens: Vec<&str> =
            body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).collect();
        if let Ok(cs) = tokens.iter().map(|t| parse_rat(t)).collect::<Result<Vec<_>>>() {
            return Ok(Self::new(cs));
        }
        let ring = Ring::new(["x"])?;
        Self::from_multipoly(&parse_poly(&ring, body)?, 0)
    }

    /// View a polynomial in a one-variable ring (or any polynomial involving
    /// only variable `var`) as a `UniPoly`.
    pub fn from_multipoly(p: &MultiPoly, var: usize) -> Result<Self> {
        let mut cs: Vec<Rat> = Vec::new();
        for (m, c) in p.terms() {
            if m.degree() != m.exp(var) {
                return Err(Error::InvalidArgument("polynomial is not univariate".into()));
            }
            let e = m.exp(var) as usize;
            if cs.len() <= e {
                cs.resize(e + 1, Rat::zero());
            }
            cs[e] += c;
        }
        Ok(Self::new(cs))
    }

    /// Coefficient list `c0 c1 ... cn` (the format accepted by `parse`).
    pub fn to_coefficient_list(&self) -> String {
        self.coeffs.iter().map(format_rat).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = a.is_one() && i > 0;
            if !unit {
                f.write_str(&format_rat(&a))?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_both_forms() {
        let a = UniPoly::parse("-1 0 1").unwrap();
        let b = UniPoly::parse("x^2 - 1").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "x^2 - 1");
        assert_eq!(UniPoly::parse("# c\n1/2, 3").unwrap(), UniPoly::parse("3*x + 1/2").unwrap());
    }

    #[test]
    fn division_and_gcd() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        let q = UniPoly::from_ints(&[-1, 1]);
        let (d, r) = p.div_rem(&q).unwrap();
        assert_eq!(d, UniPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p.gcd(&q), q);
        let sq = &q * &q;
        assert_eq!(sq.squarefree_part().monic(), q);
    }

    #[test]
    fn exact_sign() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        assert_eq!(p.sign_at(&Rat::new(141.into(), 100.into())), -1);
        assert_eq!(p.sign_at(&Rat::new(142.into(), 100.into())), 1);
        assert_eq!(UniPoly::from_ints(&[0, 1]).sign_at(&Rat::zero()), 0);
    }
}
