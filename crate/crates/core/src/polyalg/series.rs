//! Truncated power series `sum_{j=1..N} c_j x^j` with polynomial coefficients.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::multipoly::{MultiPoly, Ring};
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct TruncSeries {
    ring: Arc<Ring>,
    // coeffs[i] multiplies x^(i+1)
    coeffs: Vec<MultiPoly>,
}

impl TruncSeries {
    pub fn zero(ring: &Arc<Ring>, order: usize) -> Self {
        TruncSeries { ring: ring.clone(), coeffs: vec![MultiPoly::zero(ring); order] }
    }

    /// The series `x` truncated at `order`.
    pub fn identity(ring: &Arc<Ring>, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        if order >= 1 {
            s.coeffs[0] = MultiPoly::one(ring);
        }
        s
    }

    /// Build from `(power, coefficient)` pairs; powers above `order` are dropped.
    pub fn from_terms(
        ring: &Arc<Ring>,
        order: usize,
        terms: impl IntoIterator<Item = (usize, MultiPoly)>,
    ) -> Result<Self> {
        let mut s = Self::zero(ring, order);
        for (j, c) in terms {
            if j == 0 {
                return Err(Error::InvalidArgument("series must have no constant term".into()));
            }
            if j <= order {
                s.coeffs[j - 1] = s.coeffs[j - 1].checked_add(&c)?;
            }
        }
        Ok(s)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `x^j` (zero above the truncation order).
    pub fn coeff(&self, j: usize) -> MultiPoly {
        if j == 0 || j > self.coeffs.len() {
            MultiPoly::zero(&self.ring)
        } else {
            self.coeffs[j - 1].clone()
        }
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// Smallest power with nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero()).map(|i| i + 1)
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::Truncation { needed: order, available: self.order() });
        }
        Ok(TruncSeries { ring: self.ring.clone(), coeffs: self.coeffs[..order].to_vec() })
    }

    pub fn add(&self, other: &TruncSeries) -> Result<Self> {
        let n = self.order().min(other.order());
        let coeffs = (0..n)
            .map(|i| self.coeffs[i].checked_add(&other.coeffs[i]))
            .collect::<Result<_>>()?;
        Ok(TruncSeries { ring: self.ring.clone(), coeffs })
    }

    pub fn scale(&self, c: &MultiPoly) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|p| p.checked_mul(c)).collect::<Result<_>>()?;
        Ok(TruncSeries { ring: self.ring.clone(), coeffs })
    }

    /// Product truncated at `order`.
    fn mul_trunc(&self, other: &TruncSeries, order: usize) -> TruncSeries {
        let mut out = vec![MultiPoly::zero(&self.ring); order];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                // x^(i+1) * x^(j+1) = x^(i+j+2)
                let k = i + j + 1;
                if k >= order {
                    break;
                }
                if !b.is_zero() {
                    out[k] = &out[k] + &(a * b);
                }
            }
        }
        TruncSeries { ring: self.ring.clone(), coeffs: out }
    }

    /// `self(inner(x))` through `x^order`.
    pub fn compose(&self, inner: &TruncSeries, order: usize) -> Result<TruncSeries> {
        if self.ring != inner.ring {
            return Err(Error::RingMismatch(self.ring.describe(), inner.ring.describe()));
        }
        let available = self.order().min(inner.order());
        if order > available {
            return Err(Error::Truncation { needed: order, available });
        }
        let inner = inner.truncate(order)?;
        let mut acc = Self::zero(&self.ring, order);
        let mut power = inner.clone();
        for k in 1..=order {
            let c = &self.coeffs[k - 1];
            if !c.is_zero() {
                for (slot, p) in acc.coeffs.iter_mut().zip(&power.coeffs) {
                    if !p.is_zero() {
                        *slot = &*slot + &(c * p);
                    }
                }
            }
            let more = self.coeffs[k..order].iter().any(|c| !c.is_zero());
            if !more {
                break;
            }
            power = power.mul_trunc(&inner, order);
            if power.valuation().is_none() {
                break;
            }
        }
        Ok(acc)
    }

    /// Compositional inverse of `x + b_2 x^2 + ...` through `x^order`.
    pub fn reverse(&self, order: usize) -> Result<TruncSeries> {
        if order > self.order() {
            return Err(Error::Truncation { needed: order, available: self.order() });
        }
        let lead = self.coeff(1);
        if !(lead.is_constant() && lead.constant_term().is_one()) {
            return Err(Error::InvalidArgument("series reversion needs leading coefficient 1".into()));
        }
        let mut h = Self::identity(&self.ring, order);
        // coefficient k of g(h) equals h_k plus terms in h_2..h_{k-1}
        for k in 2..=order {
            let gh = self.truncate(k)?.compose(&h.truncate(k)?, k)?;
            let e = gh.coeff(k);
            h.coeffs[k - 1] = &h.coeffs[k - 1] - &e;
        }
        Ok(h)
    }

    /// Evaluate every coefficient at a rational point.
    pub fn eval_coeffs(&self, point: &[Rat]) -> Vec<Rat> {
        self.coeffs.iter().map(|c| c.eval(point)).collect()
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let xp = if i == 0 { "x".to_string() } else { format!("x^{}", i + 1) };
            let term = if c.is_constant() {
                let r = c.constant_term();
                if r.is_one() {
                    xp
                } else if (-&r).is_one() {
                    format!("-{xp}")
                } else {
                    format!("{}*{xp}", super::rat::format_rat(&r))
                }
            } else {
                format!("({c})*{xp}")
            };
            if first {
                f.write_str(&term)?;
                first = false;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Series of `-x + sum_j a_j x^j` for coefficient polynomials given by power.
pub fn map_series(
    ring: &Arc<Ring>,
    order: usize,
    coeffs: impl IntoIterator<Item = (usize, MultiPoly)>,
) -> Result<TruncSeries> {
    let lin = (1usize, MultiPoly::constant(ring, -Rat::one()));
    TruncSeries::from_terms(ring, order, std::iter::once(lin).chain(coeffs))
}

/// Check that a rational coefficient list starts with the identity.
pub fn is_identity_through(s: &TruncSeries, order: usize) -> bool {
    (1..=order).all(|j| {
        let c = s.coeff(j);
        if j == 1 {
            c.is_constant() && c.constant_term().is_one()
        } else {
            c.is_zero() || (c.is_constant() && c.constant_term().is_zero())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::text::parse_poly;

    fn poly(r: &Arc<Ring>, s: &str) -> MultiPoly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn quadratic_map_composed_with_itself() {
        let r = Ring::a_family(2);
        let f = map_series(&r, 4, [(2, poly(&r, "a2"))]).unwrap();
        let ff = f.compose(&f, 4).unwrap();
        assert_eq!(ff.coeff(1), MultiPoly::one(&r));
        assert!(ff.coeff(2).is_zero());
        assert_eq!(ff.coeff(3), poly(&r, "-2*a2^2"));
        assert_eq!(ff.coeff(4), poly(&r, "a2^3"));
    }

    #[test]
    fn reversion_matches_known_expansion() {
        let r = Ring::family("b", 4);
        let g = TruncSeries::from_terms(
            &r,
            4,
            [
                (1, MultiPoly::one(&r)),
                (2, poly(&r, "b2")),
                (3, poly(&r, "b3")),
                (4, poly(&r, "b4")),
            ],
        )
        .unwrap();
        let h = g.reverse(4).unwrap();
        assert_eq!(h.coeff(2), poly(&r, "-b2"));
        assert_eq!(h.coeff(3), poly(&r, "2*b2^2 - b3"));
        assert_eq!(h.coeff(4), poly(&r, "-5*b2^3 + 5*b2*b3 - b4"));
        assert!(is_identity_through(&g.compose(&h, 4).unwrap(), 4));
    }

    #[test]
    fn truncation_errors() {
        let r = Ring::a_family(2);
        let f = map_series(&r, 3, []).unwrap();
        assert!(matches!(f.compose(&f, 5), Err(Error::Truncation { .. })));
        let bad = map_series(&r, 3, []).unwrap();
        assert!(bad.reverse(3).is_err());
    }

    #[test]
    fn display() {
        let r = Ring::a_family(2);
        let f = map_series(&r, 3, [(2, poly(&r, "a2")), (3, poly(&r, "-1"))]).unwrap();
        assert_eq!(f.to_string(), "-x + (a2)*x^2 - x^3 + O(x^4)");
    }
}
