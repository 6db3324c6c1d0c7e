//! Staircase perturbations: starting at a weak point of order `m-1` with
//! independent gradients, switch on one small root of the displacement at a
//! time until `m-1` orbits coexist near the origin.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::maps::ConcreteMap;
use super::orbits::{count_2periodic, OrbitReport, ScanOptions, Window};
use crate::budget::Budget;
use crate::certify::{gradient, Certificate};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::polyalg::rat::{format_rat, rat_from_f64, rat_to_f64};
use crate::polyalg::{MultiPoly, Rat};
use crate::stability::generic_reduced;

#[derive(Clone, Debug, Serialize)]
pub struct StaircaseOptions {
    /// Position of the first (largest) orbit.
    pub first_root: f64,
    /// Each new orbit sits at this fraction of the previous one.
    pub ratio: f64,
    /// Parameters are rounded to multiples of `2^-bits` after each Newton step.
    pub bits: u32,
    pub max_newton: usize,
    /// Scan window is `(0, window_factor * first_root)`.
    pub window_factor: f64,
    pub scan: ScanOptions,
}

impl Default for StaircaseOptions {
    fn default() -> Self {
        StaircaseOptions {
            first_root: 1e-2,
            ratio: 1e-2,
            bits: 400,
            max_newton: 60,
            window_factor: 3.0,
            scan: ScanOptions::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StaircaseStep {
    /// Number of roots switched on.
    pub roots: usize,
    /// Intended positions of the orbits.
    pub targets: Vec<f64>,
    /// Parameter values `a_2..a_d` (exact dyadic rationals).
    pub point: Vec<String>,
    /// Values of `V_3, V_5, ..` at the point, rounded.
    pub constants: Vec<f64>,
    pub newton_iterations: usize,
    pub orbits: OrbitReport,
    #[serde(skip)]
    exact: Vec<Rat>,
}

impl StaircaseStep {
    pub fn map(&self) -> ConcreteMap {
        ConcreteMap::reversing(&self.exact)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StaircaseReport {
    pub d: usize,
    pub base: Vec<String>,
    pub order: usize,
    pub witness: String,
    pub steps: Vec<StaircaseStep>,
}

impl StaircaseReport {
    pub fn final_count(&self) -> usize {
        self.steps.last().map_or(0, |s| s.orbits.count())
    }
}

fn round_dyadic(r: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let scaled = r * Rat::from_integer(scale.clone());
    Rat::new(scaled.round().to_integer(), scale)
}

/// Elementary symmetric polynomials `e_0..e_k` of `xs`.
fn elementary(xs: &[Rat]) -> Vec<Rat> {
    let mut e = vec![Rat::one()];
    for x in xs {
        e.push(Rat::zero());
        for i in (1..e.len()).rev() {
            let t = &e[i - 1] * x;
            e[i] += t;
        }
    }
    e
}

/// Run the staircase from a certified weak point with rational coordinates.
///
/// With `w = V_{2m+1}(a*)` and squared target roots `u_i = rho_i^2`, step `k`
/// solves `sum_i V_{2i+1} u^{i-1} = w u^{m-1-k} prod_{i<=k} (u - u_i)` for
/// `a_2..a_m` by exact Newton iteration, then counts orbits on
/// `(0, window_factor * rho_1)`.
pub fn staircase(cert: &Certificate, opts: &StaircaseOptions, budget: &Budget) -> Result<StaircaseReport> {
    if cert.determinant.is_zero() {
        return Err(Error::InvalidArgument("staircase needs a nonzero gradient determinant".into()));
    }
    let base: Vec<Rat> = cert
        .point
        .iter()
        .map(|q| q.as_rational().cloned())
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidArgument("staircase supports rational base points only".into()))?;
    let w = cert
        .witness_value
        .as_rational()
        .cloned()
        .ok_or_else(|| Error::InvalidArgument("irrational witness value".into()))?;
    let d = cert.d;
    let order = cert.order;
    let vs = generic_reduced(d, 2 * order + 1, budget)?;
    let eqs: Vec<&MultiPoly> = (1..=order).map(|k| &vs[&(2 * k + 1)]).collect();
    let grads: Vec<Vec<MultiPoly>> = eqs.iter().map(|p| gradient(p, order)).collect();

    let roots: Vec<Rat> = (0..order)
        .map(|i| rat_from_f64(opts.first_root * opts.ratio.powi(i as i32)))
        .collect();
    let window = Window::Interval(0.0, opts.window_factor * opts.first_root);

    let mut report = StaircaseReport {
        d,
        base: base.iter().map(format_rat).collect(),
        order,
        witness: format_rat(&w),
        steps: Vec::new(),
    };
    let mut point = base.clone();
    for k in 1..=order {
        budget.check("staircase", || format!("{} of {order} steps done", k - 1))?;
        let squares: Vec<Rat> = roots[..k].iter().map(|r| r * r).collect();
        let e = elementary(&squares);
        // coefficient of u^(j-1) belongs to V_{2j+1}, j = 1..order
        let targets: Vec<Rat> = (1..=order)
            .map(|j| {
                let i = order - (j - 1);
                if i <= k {
                    let s = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
                    &w * s * &e[i]
                } else {
                    Rat::zero()
                }
            })
            .collect();
        let iterations = newton(&eqs, &grads, &targets, &mut point, opts, budget)?;
        let map = ConcreteMap::reversing(&point);
        let orbits = count_2periodic(&map, window, &opts.scan)?;
        report.steps.push(StaircaseStep {
            roots: k,
            targets: roots[..k].iter().map(rat_to_f64).collect(),
            point: point.iter().map(format_rat).collect(),
            constants: eqs.iter().map(|p| rat_to_f64(&p.eval(&point))).collect(),
            newton_iterations: iterations,
            orbits,
            exact: point.clone(),
        });
    }
    Ok(report)
}

fn newton(
    eqs: &[&MultiPoly],
    grads: &[Vec<MultiPoly>],
    targets: &[Rat],
    point: &mut [Rat],
    opts: &StaircaseOptions,
    budget: &Budget,
) -> Result<usize> {
    let n = eqs.len();
    // stop once residuals are well below the rounding grid of the parameters
    let eps = Rat::new(BigInt::one(), BigInt::one() << (opts.bits - 40));
    for it in 0..opts.max_newton {
        let res: Vec<Rat> = eqs.iter().zip(targets).map(|(p, t)| p.eval(point) - t).collect();
        if res.iter().all(|r| r.abs() <= eps) {
            return Ok(it);
        }
        budget.check("staircase newton", || format!("iteration {it}"))?;
        // jac[j][i] = dV_j / da_i
        let jac: Vec<Vec<Rat>> = grads.iter().map(|g| g.iter().map(|q| q.eval(point)).collect()).collect();
        let rhs: Vec<Rat> = res.iter().map(|r| -r).collect();
        let step = solve(&jac, &rhs).ok_or_else(|| Error::Numerical("singular Jacobian during staircase".into()))?;
        for i in 0..n {
            point[i] = round_dyadic(&(&point[i] + &step[i]), opts.bits);
        }
    }
    Err(Error::Numerical(format!("Newton did not converge in {} iterations", opts.max_newton)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_functions() {
        let e = elementary(&[Rat::from_integer(2.into()), Rat::from_integer(3.into())]);
        assert_eq!(e, vec![Rat::one(), Rat::from_integer(5.into()), Rat::from_integer(6.into())]);
    }
}
