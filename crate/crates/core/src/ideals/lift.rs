use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::solve_any;
use crate::polyalg::{monomials_of_weight, MultiPoly, Rat};

/// Cofactors `q_i` with `p = sum q_i g_i`, all quasi-homogeneous for
/// `weights`, found by graded linear algebra. Returns `None` when `p` is not
/// in the ideal. Free parameters of the solution are set to zero.
pub fn lift_quasi_homogeneous(
    p: &MultiPoly,
    gens: &[MultiPoly],
    weights: &[u32],
) -> Result<Option<Vec<MultiPoly>>> {
    let ring = p.ring();
    let zero_cofactors = || gens.iter().map(|_| MultiPoly::zero(ring)).collect::<Vec<_>>();
    if p.is_zero() {
        return Ok(Some(zero_cofactors()));
    }
    let w = p
        .quasi_degree(weights)
        .ok_or_else(|| Error::InvalidArgument(format!("{p} is not quasi-homogeneous")))?;
    let mut columns = Vec::new(); // (generator index, multiplier, product)
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let wg = g
            .quasi_degree(weights)
            .ok_or_else(|| Error::InvalidArgument(format!("{g} is not quasi-homogeneous")))?;
        if wg > w {
            continue;
        }
        for m in monomials_of_weight(weights, w - wg) {
            columns.push((i, m, g.mul_term(&m, &Rat::from_integer(1.into()))));
        }
    }
    let rows = monomials_of_weight(weights, w);
    let index: HashMap<_, _> = rows.iter().enumerate().map(|(k, m)| (*m, k)).collect();
    let zero = Rat::from_integer(0.into());
    let mut matrix = vec![vec![zero.clone(); columns.len()]; rows.len()];
    for (c, (_, _, prod)) in columns.iter().enumerate() {
        for (m, coef) in prod.terms() {
            matrix[index[m]][c] = coef.clone();
        }
    }
    let rhs: Vec<Rat> = rows.iter().map(|m| p.coefficient(m)).collect();
    let Some(x) = solve_any(&matrix, &rhs) else {
        return Ok(None);
    };
    let mut out = zero_cofactors();
    for ((i, m, _), c) in columns.iter().zip(x) {
        if c != zero {
            out[*i] = &out[*i] + &MultiPoly::monomial(ring, *m, c);
        }
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_poly, Ring};

    #[test]
    fn lifts_a_simple_combination() {
        let r = Ring::a_family(4);
        let w = r.family_weights().unwrap();
        let g1 = parse_poly(&r, "-2*a2^2 - 2*a3").unwrap();
        let g2 = parse_poly(&r, "-6*a2*a4 + 4*a3^2").unwrap();
        let p = parse_poly(&r, "a3*(-2*a2^2 - 2*a3) + 3*(-6*a2*a4 + 4*a3^2)").unwrap();
        let q = lift_quasi_homogeneous(&p, &[g1.clone(), g2.clone()], &w).unwrap().unwrap();
        assert_eq!(&(&q[0] * &g1) + &(&q[1] * &g2), p);
        let outside = parse_poly(&r, "a3").unwrap();
        assert!(lift_quasi_homogeneous(&outside, &[g1], &w).unwrap().is_none());
    }
}
