//! Counting 2-periodic orbits by exact sign scans of `f∘f - x`.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::maps::{relative, ConcreteMap};
use crate::error::{Error, Result};
use crate::polyalg::rat::{rat_from_f64, rat_to_f64};
use crate::polyalg::Rat;
use crate::realroots::{cauchy_bound, sturm_count, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Window {
    /// Open interval `(lo, hi)`.
    Interval(f64, f64),
    /// All real roots (Cauchy bound of `f∘f - x`).
    Global,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanOptions {
    /// Points of the uniform grid and of each logarithmic grid.
    pub grid: usize,
    /// Smallest magnitude of the logarithmic grid, relative to the window.
    pub log_floor: f64,
    /// Bisection stops at this relative width.
    pub rel_width: f64,
    /// Validation tolerance on relative residuals.
    pub tol: f64,
    /// Cross-check the scan with an exact Sturm count when the scanned
    /// polynomial has at most this degree (Sturm chains over Q get
    /// expensive for large degree with large coefficients).
    pub sturm_max_degree: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { grid: 10_000, log_floor: 1e-15, rel_width: 1e-14, tol: 1e-10, sturm_max_degree: 24 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    pub x: f64,
    pub y: f64,
    /// `|f(f(x)) - x| / |x|` at the bracket midpoint, exact then rounded.
    pub residual: f64,
    /// `|f(y) - x| / |x|` with `y` rounded to `f64`.
    pub closing_residual: f64,
    /// `|x - y| / max(|x|, |y|)`.
    pub separation: f64,
    #[serde(skip)]
    pub(crate) bracket: (Rat, Rat),
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub window: (f64, f64),
    pub orbits: Vec<Orbit>,
    pub fixed_points: Vec<f64>,
    /// Roots that failed validation.
    pub dropped: Vec<f64>,
    /// Distinct roots of `f∘f - x` in the window by exact Sturm count
    /// (`None` when skipped).
    pub sturm_roots: Option<usize>,
    /// Roots located by the scan (before classification).
    pub scan_roots: usize,
    /// `f∘f = id`: every point is periodic and nothing is isolated.
    pub non_isolated: bool,
    pub options: ScanOptions,
}

impl OrbitReport {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    /// Scan found every distinct root Sturm sees; `true` when the Sturm
    /// count was skipped.
    pub fn complete(&self) -> bool {
        self.sturm_roots.is_none_or(|n| n == self.scan_roots)
    }

    pub fn max_residual(&self) -> f64 {
        self.orbits.iter().map(|o| o.residual.max(o.closing_residual)).fold(0.0, f64::max)
    }
}

fn grid_points(lo: f64, hi: f64, opts: &ScanOptions) -> Vec<f64> {
    let n = opts.grid.max(2);
    let mut pts: Vec<f64> = (0..=n).map(|i| lo + (hi - lo) * i as f64 / n as f64).collect();
    let span = hi.abs().max(lo.abs());
    let floor = span * opts.log_floor;
    let mut log_side = |a: f64, b: f64, sign: f64| {
        // magnitudes in [a, b], a > 0
        if a >= b {
            return;
        }
        let (la, lb) = (a.ln(), b.ln());
        for i in 0..=n {
            pts.push(sign * (la + (lb - la) * i as f64 / n as f64).exp());
        }
    };
    if hi > 0.0 {
        log_side(lo.max(floor), hi, 1.0);
    }
    if lo < 0.0 {
        log_side((-hi).max(floor), -lo, -1.0);
    }
    pts.retain(|x| *x > lo && *x < hi);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn bisect(g: &UniPoly, mut a: Rat, mut b: Rat, rel: &Rat) -> (Rat, Rat) {
    let sa = g.sign_at(&a);
    loop {
        let scale = if a.abs() > b.abs() { a.abs() } else { b.abs() };
        if &b - &a <= &scale * rel {
            return (a, b);
        }
        let mid = (&a + &b) / Rat::from_integer(2.into());
        let s = g.sign_at(&mid);
        if s == 0 {
            return (mid.clone(), mid);
        }
        if s == sa {
            a = mid;
        } else {
            b = mid;
        }
    }
}

/// Locate the 2-periodic orbits of `map` inside `window`.
///
/// Roots of `(f∘f(x) - x) / x^k` are bracketed by an exact sign scan over a
/// uniform grid merged with logarithmic grids toward 0, then bisected exactly.
/// Each root is classified as a fixed point or a 2-periodic point; points of
/// one orbit inside the window are merged.
pub fn count_2periodic(map: &ConcreteMap, window: Window, opts: &ScanOptions) -> Result<OrbitReport> {
    let two = map.two_step();
    let (lo, hi) = match window {
        Window::Interval(lo, hi) => {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidArgument(format!("bad window ({lo}, {hi})")));
            }
            (lo, hi)
        }
        Window::Global => {
            if two.is_zero() {
                (-1.0, 1.0)
            } else {
                let b = rat_to_f64(&cauchy_bound(&two)) * 1.01;
                (-b, b)
            }
        }
    };
    let mut report = OrbitReport {
        window: (lo, hi),
        orbits: Vec::new(),
        fixed_points: Vec::new(),
        dropped: Vec::new(),
        sturm_roots: None,
        scan_roots: 0,
        non_isolated: false,
        options: opts.clone(),
    };
    if two.is_zero() {
        report.non_isolated = true;
        return Ok(report);
    }
    let g = two.strip_x_power().1.primitive_positive();
    let (rlo, rhi) = (rat_from_f64(lo), rat_from_f64(hi));
    let zero = Rat::zero();
    let contains_zero = lo < 0.0 && hi > 0.0;
    if g.degree().unwrap_or(0) <= opts.sturm_max_degree {
        report.sturm_roots = Some(open_count(&g, &rlo, &rhi) + usize::from(contains_zero));
    }

    let rel = rat_from_f64(opts.rel_width);
    let pts: Vec<Rat> = grid_points(lo, hi, opts).into_iter().map(rat_from_f64).collect();
    let mut roots: Vec<(Rat, Rat)> = Vec::new();
    let mut prev: Option<(Rat, i32)> = None;
    for p in pts {
        let s = g.sign_at(&p);
        if s == 0 {
            roots.push((p.clone(), p.clone()));
            prev = None;
            continue;
        }
        if let Some((q, sq)) = &prev {
            if *sq != s {
                roots.push(bisect(&g, q.clone(), p.clone(), &rel));
            }
        }
        prev = Some((p, s));
    }
    if contains_zero {
        roots.push((zero.clone(), zero.clone()));
        roots.sort_by(|a, b| a.0.cmp(&b.0));
    }
    report.scan_roots = roots.len();

    let tol = opts.tol;
    let mut candidates = Vec::new();
    for (a, b) in roots {
        let x = (&a + &b) / Rat::from_integer(2.into());
        let fx = map.eval(&x);
        let xf = rat_to_f64(&x);
        if relative(&(&fx - &x), &x) <= 10.0 * tol || x.is_zero() {
            report.fixed_points.push(xf);
            continue;
        }
        let residual = relative(&two.eval(&x), &x);
        let y = rat_to_f64(&fx);
        let closing = relative(&(map.eval(&rat_from_f64(y)) - &x), &x);
        let separation = (xf - y).abs() / xf.abs().max(y.abs());
        if residual < tol && closing < tol && separation > 10.0 * tol {
            candidates.push(Orbit { x: xf, y, residual, closing_residual: closing, separation, bracket: (a, b) });
        } else {
            report.dropped.push(xf);
        }
    }
    // merge the two points of an orbit when both lie in the window
    let mut used = vec![false; candidates.len()];
    for i in 0..candidates.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let yi = candidates[i].y;
        let partner = (0..candidates.len())
            .filter(|&j| !used[j])
            .find(|&j| (candidates[j].x - yi).abs() <= 1e-8 * yi.abs().max(1e-300));
        let mut o = candidates[i].clone();
        if let Some(j) = partner {
            used[j] = true;
            if candidates[j].x > o.x {
                o = candidates[j].clone();
            }
        }
        report.orbits.push(o);
    }
    Ok(report)
}

/// Distinct roots of `g` in the open interval `(lo, hi)`.
fn open_count(g: &UniPoly, lo: &Rat, hi: &Rat) -> usize {
    let n = sturm_count(g, Some((lo, hi)));
    n - usize::from(n > 0 && g.sign_at(hi) == 0)
}

/// Re-check every orbit after refining its bracket to `rel_width`; returns
/// `(old residual, new residual)` pairs.
pub fn revalidate(map: &ConcreteMap, report: &OrbitReport, rel_width: f64) -> Vec<(f64, f64)> {
    let two = map.two_step();
    let g = two.strip_x_power().1.primitive_positive();
    let rel = rat_from_f64(rel_width);
    report
        .orbits
        .iter()
        .map(|o| {
            let (a, b) = bisect(&g, o.bracket.0.clone(), o.bracket.1.clone(), &rel);
            let x = (&a + &b) / Rat::from_integer(2.into());
            (o.residual, relative(&two.eval(&x), &x))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct NullReport {
    /// Largest `R` such that `g' > 0` on `(-R, R)` (capped at the window).
    pub monotone_radius: f64,
    pub window: (f64, f64),
    pub orbits: usize,
    pub fixed_points: usize,
}

/// For `g` with `g'(0) = 1`: find the monotonicity radius around 0 and
/// confirm that `g∘g - x` has only fixed points inside the window
/// intersected with it (an increasing map has no 2-periodic orbits).
pub fn orientation_preserving_null(map: &ConcreteMap, radius: f64) -> Result<NullReport> {
    if map.linear_coefficient() != Rat::from_integer(1.into()) {
        return Err(Error::InvalidArgument("map must have g'(0) = 1".into()));
    }
    let d = map.poly().derivative();
    let roots = crate::realroots::isolate_roots(&d);
    let width = rat_from_f64(1e-12);
    // g'(0) = 1, so refined brackets stay away from 0
    let nearest = roots
        .iter()
        .map(|iv| {
            let iv = crate::realroots::refine(&d, iv, &width);
            rat_to_f64(&iv.lo).abs().min(rat_to_f64(&iv.hi).abs())
        })
        .fold(f64::INFINITY, f64::min);
    let r = radius.min(nearest);
    let report = count_2periodic(map, Window::Interval(-r, r), &ScanOptions::default())?;
    Ok(NullReport {
        monotone_radius: r,
        window: (-r, r),
        orbits: report.count(),
        fixed_points: report.fixed_points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat::int;

    #[test]
    fn quadratic_map_has_no_orbits() {
        let m = ConcreteMap::reversing(&[int(2)]);
        let r = count_2periodic(&m, Window::Interval(0.0, 0.5), &ScanOptions { grid: 500, ..Default::default() }).unwrap();
        assert_eq!(r.count(), 0);
    }

    #[test]
    fn global_example() {
        let m = ConcreteMap::reversing(&[int(-7), int(0), int(10)]);
        let r = count_2periodic(&m, Window::Global, &ScanOptions { grid: 2000, ..Default::default() }).unwrap();
        assert_eq!(r.count(), 3);
        assert_eq!(r.fixed_points.len(), 4);
        assert!(r.complete());
    }
}
