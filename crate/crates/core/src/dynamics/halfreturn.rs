//! Half-return map of the polar model `dr/dθ = δ r^(2ℓ+1) + γ r^(4ℓ+1)`.
//!
//! The integrator works with the rescaled deviation `z = (r - x0) / x0^(2ℓ+1)`,
//! which stays of order one, so relative accuracy in `Π₊(x) + x` does not
//! degrade as `x0 → 0`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Vector1};
use ode_solvers::{Dop853, System};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct HalfReturnProbe {
    pub ell: u32,
    /// Target coefficients of `x^(2ℓ+1)` and `x^(4ℓ+1)` (`None` for raw probes).
    pub sigma: Option<f64>,
    pub c: Option<f64>,
    pub delta: f64,
    pub gamma: f64,
    pub rtol: f64,
    pub atol: f64,
}

struct Deviation {
    ell: i32,
    delta: f64,
    gamma: f64,
    t: f64,
}

impl System<f64, Vector1<f64>> for Deviation {
    fn system(&self, _theta: f64, y: &Vector1<f64>, dy: &mut Vector1<f64>) {
        let s = 1.0 + self.t * y[0];
        dy[0] = self.delta * s.powi(2 * self.ell + 1) + self.gamma * self.t * s.powi(4 * self.ell + 1);
    }
}

impl HalfReturnProbe {
    /// Probe whose half-return map is `-x + σ x^(2ℓ+1) + c x^(4ℓ+1) + ..`:
    /// `δ = -σ/π`, `γ = -(c + (2ℓ+1)σ²/2)/π`.
    pub fn new(ell: u32, sigma: f64, c: f64) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidArgument("ell must be positive".into()));
        }
        if sigma != 1.0 && sigma != -1.0 {
            return Err(Error::InvalidArgument(format!("sigma must be +1 or -1, got {sigma}")));
        }
        if !c.is_finite() {
            return Err(Error::InvalidArgument("c must be finite".into()));
        }
        let l = ell as f64;
        Ok(HalfReturnProbe {
            ell,
            sigma: Some(sigma),
            c: Some(c),
            delta: -sigma / PI,
            gamma: -(c + (2.0 * l + 1.0) * sigma * sigma / 2.0) / PI,
            rtol: 1e-13,
            atol: 1e-15,
        })
    }

    /// Probe with the polar coefficients given directly.
    pub fn from_coefficients(ell: u32, delta: f64, gamma: f64) -> Result<Self> {
        if ell == 0 || !delta.is_finite() || !gamma.is_finite() {
            return Err(Error::InvalidArgument("need ell > 0 and finite coefficients".into()));
        }
        Ok(HalfReturnProbe { ell, sigma: None, c: None, delta, gamma, rtol: 1e-13, atol: 1e-15 })
    }

    fn t(&self, x0: f64) -> f64 {
        x0.powi(2 * self.ell as i32)
    }

    /// `z(θ)` for `r(0) = x0 > 0`, by the adaptive order-8 Runge-Kutta pair.
    pub fn deviation(&self, x0: f64, theta: f64) -> Result<f64> {
        if !(x0 > 0.0) || !x0.is_finite() {
            return Err(Error::InvalidArgument(format!("x0 must be positive, got {x0}")));
        }
        if self.delta == 0.0 && self.gamma == 0.0 {
            return Ok(0.0);
        }
        let sys = Deviation { ell: self.ell as i32, delta: self.delta, gamma: self.gamma, t: self.t(x0) };
        // dense output with one increment: samples at 0 and theta only
        let mut solver = Dop853::new(sys, 0.0, theta, theta, Vector1::new(0.0), self.rtol, self.atol);
        solver
            .integrate()
            .map_err(|e| Error::Numerical(format!("integration failed at x0 = {x0}: {e}")))?;
        let z = solver.y_out().last().map(|y| y[0]).unwrap_or(f64::NAN);
        let end = solver.x_out().last().copied().unwrap_or(f64::NAN);
        if !z.is_finite() || (end - theta).abs() > 1e-12 * theta.abs().max(1.0) {
            return Err(Error::Numerical(format!("no finite solution up to θ = {theta} for x0 = {x0}")));
        }
        Ok(z)
    }

    /// `z(θ)` from the separable solution in `u = r^(-2ℓ)`:
    /// `u' = -2ℓ(δ + γ/u)`.
    pub fn deviation_closed_form(&self, x0: f64, theta: f64) -> Result<f64> {
        let l2 = 2.0 * self.ell as f64;
        let t = self.t(x0);
        let (d, g) = (self.delta, self.gamma);
        let u0 = 1.0 / t;
        let big_delta = if d == 0.0 {
            if g == 0.0 {
                return Ok(0.0);
            }
            // u^2 = u0^2 - 2 l2 γ θ
            u0 * (0.5 * (-2.0 * l2 * g * theta / (u0 * u0)).ln_1p()).exp_m1()
        } else {
            // Δ/δ - (γ/δ²) ln(1 + δΔ/(δu0 + γ)) = -l2 θ
            let base = d * u0 + g;
            let f = |x: f64| x / d - g / (d * d) * (d * x / base).ln_1p() + l2 * theta;
            let df = |x: f64| 1.0 / d - (g / d) / (base + d * x);
            let mut x = -l2 * theta * d;
            let mut converged = false;
            for _ in 0..100 {
                let step = f(x) / df(x);
                x -= step;
                if step.abs() <= 1e-16 * x.abs().max(1e-300) {
                    converged = true;
                    break;
                }
            }
            if !converged && f(x).abs() > 1e-12 * (x / d).abs().max(1.0) {
                return Err(Error::Numerical("closed-form Newton did not converge".into()));
            }
            x
        };
        let z = (-(big_delta * t).ln_1p() / l2).exp_m1() / t;
        if z.is_finite() {
            Ok(z)
        } else {
            Err(Error::Numerical(format!("no closed-form solution up to θ = {theta} for x0 = {x0}")))
        }
    }

    fn turn(&self, x: f64, theta: f64, sign: f64) -> Result<f64> {
        if x == 0.0 {
            return Ok(0.0);
        }
        let a = x.abs();
        let z = self.deviation(a, theta)?;
        Ok(x.signum() * sign * a * (1.0 + self.t(a) * z))
    }

    /// `Π₊(x) = -r(π; x)`, extended to `x < 0` by oddness.
    pub fn half_return(&self, x: f64) -> Result<f64> {
        self.turn(x, PI, -1.0)
    }

    /// Full return map `r(2π; x)`.
    pub fn full_return(&self, x: f64) -> Result<f64> {
        self.turn(x, 2.0 * PI, 1.0)
    }

    /// Largest relative gap in `z(π)` between the integrator and the closed
    /// form over `xs`.
    pub fn crosscheck(&self, xs: &[f64]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for &x in xs {
            let a = self.deviation(x, PI)?;
            let b = self.deviation_closed_form(x, PI)?;
            worst = worst.max((a - b).abs() / b.abs().max(1e-300).max(if b == 0.0 { 1.0 } else { 0.0 }));
        }
        Ok(worst)
    }

    /// Fit on 60 geometric samples in `[0.03, 0.2]` with 9 terms.
    pub fn fit_default(&self) -> Result<HalfReturnFit> {
        self.fit(&geometric_grid(0.03, 0.2, 60), 9)
    }

    /// Least-squares fit of `Π₊(x)/x = β_0 + β_1 t + .. + β_K t^K`, `t = x^(2ℓ)`.
    pub fn fit(&self, xs: &[f64], terms: usize) -> Result<HalfReturnFit> {
        if terms < 3 || xs.len() < terms {
            return Err(Error::InvalidArgument("need at least 3 terms and as many sample points".into()));
        }
        let ts: Vec<f64> = xs.iter().map(|&x| self.t(x)).collect();
        let scale = ts.iter().cloned().fold(0.0, f64::max);
        let mut a = DMatrix::<f64>::zeros(xs.len(), terms);
        let mut b = DVector::<f64>::zeros(xs.len());
        for (i, (&x, &t)) in xs.iter().zip(&ts).enumerate() {
            b[i] = self.half_return(x)? / x;
            for j in 0..terms {
                a[(i, j)] = (t / scale).powi(j as i32);
            }
        }
        let sol = a
            .svd(true, true)
            .solve(&b, 1e-300)
            .map_err(|e| Error::Numerical(format!("least squares failed: {e}")))?;
        let coefficients: Vec<f64> = (0..terms).map(|j| sol[j] / scale.powi(j as i32)).collect();
        let err = |got: f64, want: f64| {
            // relative error, absolute when the target vanishes
            if want == 0.0 {
                got.abs()
            } else {
                ((got - want) / want).abs()
            }
        };
        let l = self.ell as f64;
        let (sigma, c) = match (self.sigma, self.c) {
            (Some(s), Some(c)) => (s, c),
            _ => (-self.delta * PI, -(self.gamma * PI + self.delta * self.delta * (2.0 * l + 1.0) * PI * PI / 2.0)),
        };
        Ok(HalfReturnFit {
            samples: xs.to_vec(),
            leading_error: err(coefficients[0], -1.0),
            sigma_error: err(coefficients[1], sigma),
            c_error: err(coefficients[2], c),
            coefficients,
            expected: [-1.0, sigma, c],
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HalfReturnFit {
    pub samples: Vec<f64>,
    /// `β_0, β_1, ..` in powers of `t = x^(2ℓ)`.
    pub coefficients: Vec<f64>,
    /// `-1, σ, c` implied by the probe.
    pub expected: [f64; 3],
    pub leading_error: f64,
    pub sigma_error: f64,
    /// Relative error, absolute when `c = 0`.
    pub c_error: f64,
}

impl HalfReturnFit {
    pub fn max_error(&self) -> f64 {
        self.leading_error.max(self.sigma_error).max(self.c_error)
    }
}

/// `count` points geometrically spaced on `[lo, hi]`.
pub fn geometric_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let r = (hi / lo).ln() / (count - 1) as f64;
    (0..count).map(|i| lo * (r * i as f64).exp()).collect()
}
