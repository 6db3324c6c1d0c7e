use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyalg::rat::{format_rat, rat_to_f64};
use crate::polyalg::{QuadExt, Rat};
use crate::realroots::UniPoly;

/// A concrete polynomial map with `f(0) = 0`, held exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcreteMap {
    f: UniPoly,
}

impl ConcreteMap {
    /// `f(x) = -x + a_2 x^2 + ... + a_d x^d` from `(a_2, .., a_d)`.
    pub fn reversing(a: &[Rat]) -> Self {
        Self::with_linear(-Rat::one(), a)
    }

    /// `f(x) = lin x + a_2 x^2 + ...`.
    pub fn with_linear(lin: Rat, a: &[Rat]) -> Self {
        let mut cs = vec![Rat::zero(), lin];
        cs.extend(a.iter().cloned());
        ConcreteMap { f: UniPoly::new(cs) }
    }

    pub fn from_poly(f: UniPoly) -> Result<Self> {
        if !f.coeff(0).is_zero() {
            return Err(Error::InvalidArgument("map must fix the origin".into()));
        }
        Ok(ConcreteMap { f })
    }

    /// Parse `a_2,a_3,...` as exact rationals.
    pub fn parse_reversing(s: &str) -> Result<Self> {
        let a = s
            .split(',')
            .map(|t| crate::polyalg::text::parse_rational_expr(t.trim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::reversing(&a))
    }

    pub fn poly(&self) -> &UniPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap_or(0)
    }

    pub fn linear_coefficient(&self) -> Rat {
        self.f.coeff(1)
    }

    pub fn coefficients(&self) -> Vec<String> {
        self.f.coeffs().iter().skip(2).map(format_rat).collect()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.f.eval(x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.f.eval_f64(x)
    }

    /// `f(f(x)) - x` as an exact polynomial.
    pub fn two_step(&self) -> UniPoly {
        &self.f.compose(&self.f) - &UniPoly::x()
    }

    /// `f(x) - x`.
    pub fn fixed_point_poly(&self) -> UniPoly {
        &self.f - &UniPoly::x()
    }

    pub fn is_involution(&self) -> bool {
        self.two_step().is_zero()
    }
}

/// Exact sign of `f(f(x)) - x` at rational `x` for
/// `f = -x + sum a_j x^j` with coefficients in one quadratic field.
pub fn two_step_sign(a: &[QuadExt], x: &Rat) -> Result<i32> {
    use crate::linalg::Field as _;
    crate::polyalg::quad::common_radicand(a)?;
    let f = |v: &QuadExt| -> QuadExt {
        let mut acc = QuadExt::rational(<Rat as Zero>::zero());
        for c in a.iter().rev() {
            acc = acc.add(c).mul(v);
        }
        acc.mul(v).sub(v)
    };
    // Horner above computes sum a_j v^j for j >= 2, then subtracts v
    let xv = QuadExt::rational(x.clone());
    let y = f(&xv);
    Ok(f(&y).sub(&xv).signum())
}

/// Relative residual `|g(x)| / |x|` of an exact polynomial value, as `f64`.
pub(crate) fn relative(value: &Rat, x: &Rat) -> f64 {
    if x.is_zero() {
        return rat_to_f64(value).abs();
    }
    rat_to_f64(&(value / x)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat::{int, rat};

    #[test]
    fn quadratic_two_step() {
        let m = ConcreteMap::reversing(&[int(3)]);
        // f∘f - x = -2 a^2 x^3 + a^3 x^4
        assert_eq!(m.two_step(), UniPoly::new(vec![int(0), int(0), int(0), int(-18), int(27)]));
        assert!(ConcreteMap::reversing(&[]).is_involution());
    }

    #[test]
    fn exact_sign_near_zero() {
        let a = [QuadExt::rational(int(1)), QuadExt::rational(int(-1))];
        // first nonzero constant V5 = 4 > 0
        assert_eq!(two_step_sign(&a, &rat(1, 1000)).unwrap(), 1);
    }
}
