//! Truncated involutions `h = g(-g^{-1})` and linear parameter elimination.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polyalg::{MultiPoly, Rat, Ring, TruncSeries};

/// `h(x) = g(-g^{-1}(x))` through `x^d` for `g = x + b_2 x^2 + .. + b_d x^d`
/// with symbolic `b_j` (ring `b_2..b_d`).
pub fn involution_series(d: usize) -> Result<TruncSeries> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("degree must be at least 2, got {d}")));
    }
    let ring = Ring::family("b", d);
    let g = TruncSeries::from_terms(
        &ring,
        d,
        std::iter::once((1, MultiPoly::one(&ring)))
            .chain((2..=d).map(|j| (j, MultiPoly::var(&ring, j - 2)))),
    )?;
    let neg_inv = g.reverse(d)?.scale(&MultiPoly::constant(&ring, -Rat::one()))?;
    g.compose(&neg_inv, d)
}

/// The polynomials `B_2(b), .., B_d(b)` with `h_d(x) = -x + sum B_j x^j`.
pub fn involution_coefficients(d: usize) -> Result<Vec<MultiPoly>> {
    let h = involution_series(d)?;
    Ok((2..=d).map(|j| h.coeff(j)).collect())
}

/// Numeric `B_2(b)..B_d(b)` for `b = (b_2, .., b_d)`.
pub fn involution_truncate(b: &[Rat]) -> Result<Vec<Rat>> {
    let coeffs = involution_coefficients(b.len() + 1)?;
    Ok(coeffs.iter().map(|p| p.eval(b)).collect())
}

/// `var = numerator / denominator` solving `p = 0` for a variable that
/// appears linearly in `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    pub var: usize,
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
}

impl LinearSolution {
    /// `p` with the solution substituted, cleared of the denominator:
    /// `denominator * p(var = numerator/denominator)`. Zero when the solve is right.
    pub fn residual(&self, p: &MultiPoly) -> Result<MultiPoly> {
        let c1 = p.derivative(self.var);
        let c0 = p.substitute_value(self.var, &Rat::zero());
        c1.checked_mul(&self.numerator)?.checked_add(&c0.checked_mul(&self.denominator)?)
    }
}

fn integer_normalize(num: &MultiPoly, den: &MultiPoly) -> (MultiPoly, MultiPoly) {
    // make num primitive integral with positive leading coefficient, scale den alike
    let lcm = crate::polyalg::rat::denom_lcm(num.terms().iter().map(|(_, c)| c));
    let mut g = num_bigint::BigInt::zero();
    for (_, c) in num.terms() {
        let n = (c * Rat::from_integer(lcm.clone())).to_integer();
        g = num_integer::Integer::gcd(&g, &n);
    }
    let mut s = Rat::new(lcm, g);
    if num.leading_term().is_some_and(|(_, c)| num_traits::Signed::is_negative(c)) {
        s = -s;
    }
    (num.scale(&s), den.scale(&s))
}

/// Solve `p = 0` for variable `var` when `p` has degree one in it.
///
/// The result is normalized so the numerator has coprime integer
/// coefficients and a positive leading coefficient.
pub fn isolate_linear(p: &MultiPoly, var: usize) -> Result<LinearSolution> {
    let c1 = p.derivative(var);
    if c1.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "{} does not appear in the polynomial",
            p.ring().var_name(var)
        )));
    }
    if !c1.derivative(var).is_zero() {
        return Err(Error::InvalidArgument(format!(
            "polynomial is not linear in {}",
            p.ring().var_name(var)
        )));
    }
    let c0 = p.substitute_value(var, &Rat::zero());
    let (numerator, denominator) = if c0.is_zero() {
        (c0, c1)
    } else {
        integer_normalize(&-c0, &c1)
    };
    Ok(LinearSolution { var, numerator, denominator })
}

/// `W_11` of the degree-9 truncated involution `h_9`, in the ring `b_2..b_9`.
fn involution_w11() -> Result<MultiPoly> {
    let h = involution_series(9)?;
    let ring = h.ring().clone();
    // h_9 keeps only terms through x^9; compose it with itself through x^11
    let h9 = TruncSeries::from_terms(&ring, 11, (1..=9).map(|j| (j, h.coeff(j))))?;
    Ok(h9.compose(&h9, 11)?.coeff(11))
}

/// Solve `W_11(b) = 0` for `b_7` on the degree-9 involution family, after
/// fixing the given `(variable name, value)` pairs.
pub fn solve_b7(fixed: &[(&str, Rat)]) -> Result<(MultiPoly, LinearSolution)> {
    let mut w11 = involution_w11()?;
    let ring = w11.ring().clone();
    for (name, v) in fixed {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown variable {name}")))?;
        w11 = w11.substitute_value(i, v);
    }
    let b7 = ring.index_of("b7").expect("b ring");
    if w11.derivative(b7).is_zero() {
        return Err(Error::InvalidArgument(
            "the b7 coefficient of W11 vanishes at this specialization".into(),
        ));
    }
    let sol = isolate_linear(&w11, b7)?;
    Ok((w11, sol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    #[test]
    fn zero_parameters_give_minus_identity() {
        let b = vec![Rat::zero(); 5];
        assert!(involution_truncate(&b).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn low_coefficients() {
        let cs = involution_coefficients(5).unwrap();
        let r = cs[0].ring().clone();
        assert_eq!(cs[0], parse_poly(&r, "2*b2").unwrap());
        assert_eq!(cs[1], parse_poly(&r, "-4*b2^2").unwrap());
    }

    #[test]
    fn linear_isolation() {
        let r = Ring::a_family(3);
        let p = parse_poly(&r, "2*a2*a3 - 4*a2^2").unwrap();
        let s = isolate_linear(&p, 1).unwrap();
        assert!(s.residual(&p).unwrap().is_zero());
        assert!(isolate_linear(&parse_poly(&r, "a3^2").unwrap(), 1).is_err());
    }
}
