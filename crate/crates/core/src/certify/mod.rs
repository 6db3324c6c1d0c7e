//! Cyclicity certificates: gradient independence at weak points and the
//! explicit even/odd-degree constructions.

mod involution;

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::polyalg::quad::common_radicand;
use crate::polyalg::rat::{format_rat, int};
use crate::polyalg::series::map_series;
use crate::polyalg::{MultiPoly, QuadExt, Rat, Ring};
use crate::stability::{generic_reduced, stability_constants_to, weak_point_order};

pub use involution::{
    involution_coefficients, involution_series, involution_truncate, isolate_linear, solve_b7,
    LinearSolution,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    LowerBound,
    UpperBound,
    WeakPointOrder,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::LowerBound => "lower_bound",
            BoundKind::UpperBound => "upper_bound",
            BoundKind::WeakPointOrder => "weak_point_order",
        })
    }
}

/// Exact verdict for one parameter point.
///
/// `matrix[i][j]` is the derivative of `constants[j]` with respect to
/// `variables[i]` at the point, so columns are gradients.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub kind: BoundKind,
    pub d: usize,
    pub point: Vec<QuadExt>,
    pub order: usize,
    pub witness_index: usize,
    pub witness_value: QuadExt,
    pub constants: Vec<String>,
    pub variables: Vec<String>,
    pub matrix: Vec<Vec<QuadExt>>,
    pub determinant: QuadExt,
    pub criterion: String,
    pub verdict: String,
    /// Extra named structural checks (all must hold for a valid certificate).
    pub checks: Vec<(String, bool)>,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
            && (self.kind != BoundKind::LowerBound || !self.determinant.is_zero())
    }

    pub fn entry(&self, variable: &str, constant: &str) -> Option<&QuadExt> {
        let i = self.variables.iter().position(|v| v == variable)?;
        let j = self.constants.iter().position(|c| c == constant)?;
        Some(&self.matrix[i][j])
    }

    pub fn to_json(&self) -> Value {
        let s = |q: &QuadExt| q.to_string();
        json!({
            "kind": self.kind.to_string(),
            "d": self.d,
            "point": self.point.iter().map(s).collect::<Vec<_>>(),
            "order": self.order,
            "witness": { "index": self.witness_index, "value": s(&self.witness_value) },
            "constants": self.constants,
            "variables": self.variables,
            "matrix": self.matrix.iter().map(|r| r.iter().map(s).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "determinant": s(&self.determinant),
            "criterion": self.criterion,
            "verdict": self.verdict,
            "checks": self.checks.iter().map(|(n, ok)| json!({"name": n, "ok": ok})).collect::<Vec<_>>(),
        })
    }
}

const GRADIENT_CRITERION: &str =
    "gradient independence of V_3..V_{2m-1} at a weak point of order m-1";

/// Partial derivatives of `p` with respect to the first `nvars` ring variables.
pub fn gradient(p: &MultiPoly, nvars: usize) -> Vec<MultiPoly> {
    (0..nvars.min(p.ring().nvars())).map(|i| p.derivative(i)).collect()
}

fn gradient_matrix(polys: &[&MultiPoly], nvars: usize, point: &[QuadExt]) -> Vec<Vec<QuadExt>> {
    let cols: Vec<Vec<QuadExt>> = polys
        .iter()
        .map(|p| gradient(p, nvars).iter().map(|g| g.eval(point)).collect())
        .collect();
    (0..nvars).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}

fn quad_det(m: &[Vec<QuadExt>]) -> QuadExt {
    if m.is_empty() {
        QuadExt::rational(Rat::one())
    } else {
        determinant(m)
    }
}

/// Certify the cyclicity of `f_a` at `point` (values of `a_2..a_d`).
///
/// The point must be a weak fixed point of some order `m-1 <= d-1`; the
/// `(m-1) x (m-1)` gradient matrix of `V_3..V_{2m-1}` over `a_2..a_m` is then
/// evaluated exactly. A nonzero determinant proves cyclicity exactly `m-1`.
pub fn certify_lower(point: &[QuadExt], d: usize, budget: &Budget) -> Result<Certificate> {
    let wp = weak_point_order(point, d, None, budget)?;
    let order = wp.order;
    if order + 1 > d {
        return Err(Error::Inconclusive(format!(
            "weak point of order {order} needs more than the {} parameters of degree {d}",
            d - 1
        )));
    }
    let vs = generic_reduced(d, 2 * order + 1, budget)?;
    let used: Vec<&MultiPoly> = (1..=order).map(|k| &vs[&(2 * k + 1)]).collect();
    let matrix = gradient_matrix(&used, order, point);
    let det = quad_det(&matrix);
    let ring = Ring::a_family(d);
    let (kind, verdict) = if det.is_zero() {
        (BoundKind::UpperBound, format!("cyclicity at most {order}"))
    } else {
        (BoundKind::LowerBound, format!("cyclicity {order}"))
    };
    Ok(Certificate {
        kind,
        d,
        point: point.to_vec(),
        order,
        witness_index: wp.index,
        witness_value: wp.value,
        constants: (1..=order).map(|k| format!("V{}", 2 * k + 1)).collect(),
        variables: ring.vars()[..order].to_vec(),
        matrix,
        determinant: det,
        criterion: GRADIENT_CRITERION.into(),
        verdict,
        checks: Vec::new(),
    })
}

/// `d = 2n`, `a* = (0, .., 0, 1)`: the origin is a weak point of order `d-2`
/// with `W_{4n-1}(a*) = -2n`, and the gradients of `W_3, W_5, .., W_{4n-3}`
/// over `a_2..a_{2n-1}` are independent.
pub fn even_construction(n: usize) -> Result<Certificate> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let d = 2 * n;
    let top = 4 * n - 1;
    let table = stability_constants_to(d, top)?;
    let mut point = vec![QuadExt::rational(Rat::zero()); d - 1];
    point[d - 2] = QuadExt::rational(Rat::one());

    let mut checks = Vec::new();
    for j in 3..top {
        let v = table.w(j).map(|w| w.eval(&point)).unwrap_or_else(|| QuadExt::rational(Rat::zero()));
        if !v.is_zero() {
            checks.push((format!("W{j}(a*) = 0"), false));
        }
    }
    let witness = table.w(top).expect("computed").eval(&point);
    let expected = QuadExt::rational(int(-2 * n as i64));
    checks.push((format!("W{top}(a*) = {expected}"), witness == expected));

    let nv = d - 2;
    let ws: Vec<&MultiPoly> = (1..=nv).map(|k| table.w(2 * k + 1).expect("computed")).collect();
    let matrix = gradient_matrix(&ws, nv, &point);
    for k in 1..=nv {
        // position p (1-based) is the variable a_{p+1}
        let (pos, val) = if k < n { (2 * k, -2) } else { (2 * (k - n) + 1, -2 * (k as i64 + 1)) };
        let got = &matrix[pos - 1][k - 1];
        checks.push((
            format!("dW{}/da{} = {val}", 2 * k + 1, pos + 1),
            got == &QuadExt::rational(int(val)),
        ));
    }
    let det = quad_det(&matrix);
    let ring = Ring::a_family(d);
    Ok(Certificate {
        kind: if det.is_zero() { BoundKind::UpperBound } else { BoundKind::LowerBound },
        d,
        point,
        order: d - 2,
        witness_index: top,
        witness_value: witness,
        constants: (1..=nv).map(|k| format!("W{}", 2 * k + 1)).collect(),
        variables: ring.vars()[..nv].to_vec(),
        matrix,
        determinant: det,
        criterion: GRADIENT_CRITERION.into(),
        verdict: format!("cyclicity at least {}", d - 2),
        checks,
    })
}

/// `d = 4m+3`, `f(x) = -x + x^{2m+2} - (m+1) x^{4m+3}`: a weak point of order
/// `d-2` with `f∘f = x + (m+1)(5m+4)(4m+3)/3 x^{8m+5} + ...`.
pub fn odd_4m3_construction(m: usize) -> Result<Certificate> {
    let d = 4 * m + 3;
    let top = 8 * m + 5;
    let ring = Ring::a_family(d);
    let mut coeffs = vec![Rat::zero(); d - 1];
    coeffs[2 * m] = Rat::one();
    coeffs[d - 2] = -int(m as i64 + 1);
    let f = map_series(
        &ring,
        top,
        coeffs.iter().enumerate().map(|(i, c)| (i + 2, MultiPoly::constant(&ring, c.clone()))),
    )?;
    let ff = f.compose(&f, top)?;
    let c = |j: usize| ff.coeff(j).constant_term();
    let mut checks = vec![("coefficient of x is 1".to_string(), c(1).is_one())];
    let first = (2..top).find(|&j| !c(j).is_zero());
    checks.push((format!("x^2..x^{} vanish", top - 1), first.is_none()));
    let m_ = m as i64;
    let expected = Rat::new(((m_ + 1) * (5 * m_ + 4) * (4 * m_ + 3)).into(), 3.into());
    let witness = c(top);
    checks.push((format!("coefficient of x^{top} = {}", format_rat(&expected)), witness == expected));
    Ok(Certificate {
        kind: BoundKind::WeakPointOrder,
        d,
        point: coeffs.into_iter().map(QuadExt::rational).collect(),
        order: d - 2,
        witness_index: top,
        witness_value: QuadExt::rational(witness),
        constants: Vec::new(),
        variables: Vec::new(),
        matrix: Vec::new(),
        determinant: QuadExt::rational(Rat::one()),
        criterion: "first nonzero coefficient of f∘f - x".into(),
        verdict: format!("weak fixed point of order {}", d - 2),
        checks,
    })
}

/// Reject points whose coordinates mix radicals before any evaluation.
pub fn check_point(point: &[QuadExt]) -> Result<u64> {
    common_radicand(point)
}
