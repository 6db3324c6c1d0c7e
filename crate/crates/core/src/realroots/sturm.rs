use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::unipoly::UniPoly;
use crate::polyalg::rat::format_rat;
use crate::polyalg::Rat;

/// Sturm chain of the squarefree part of `p`: `p0, p0', -rem(p0, p1), ...`.
///
/// Every member is replaced by its primitive integer multiple with positive
/// scale, which leaves all signs unchanged and keeps coefficients small.
pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let p0 = p.squarefree_part().primitive_positive();
    if p0.degree().unwrap_or(0) == 0 {
        return vec![p0];
    }
    let mut seq = vec![p0.clone(), p0.derivative().primitive_positive()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero").1;
        if r.is_zero() {
            break;
        }
        seq.push((-&r).primitive_positive());
    }
    seq
}

fn changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

fn changes_at(seq: &[UniPoly], x: &Rat) -> usize {
    changes(seq.iter().map(|p| p.sign_at(x)))
}

fn changes_at_infinity(seq: &[UniPoly], positive: bool) -> usize {
    changes(seq.iter().map(|p| {
        let s = if p.leading().is_positive() { 1 } else { -1 };
        let odd = p.degree().unwrap_or(0) % 2 == 1;
        if !positive && odd {
            -s
        } else {
            s
        }
    }))
}

/// Distinct real roots of `p` in `(lo, hi]`, or on the whole line when
/// `interval` is `None`.
pub fn sturm_count(p: &UniPoly, interval: Option<(&Rat, &Rat)>) -> usize {
    if p.is_zero() {
        return 0;
    }
    let seq = sturm_sequence(p);
    count_with(&seq, interval)
}

fn count_with(seq: &[UniPoly], interval: Option<(&Rat, &Rat)>) -> usize {
    match interval {
        None => changes_at_infinity(seq, false).saturating_sub(changes_at_infinity(seq, true)),
        Some((lo, hi)) => {
            if lo >= hi {
                return 0;
            }
            changes_at(seq, lo).saturating_sub(changes_at(seq, hi))
        }
    }
}

/// Bound `B` with every real root strictly inside `(-B, B)`.
pub fn cauchy_bound(p: &UniPoly) -> Rat {
    let lc = p.leading().abs();
    let m = p.coeffs()[..p.coeffs().len().saturating_sub(1)]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(Rat::zero(), |a, b| if b > a { b } else { a });
    m + Rat::one()
}

/// An isolating interval: either an exact rational root (`lo == hi`) or an
/// open interval with a sign change of the squarefree part at its ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn to_f64(&self) -> f64 {
        crate::polyalg::rat::rat_to_f64(&self.midpoint())
    }

    pub fn report(&self) -> IntervalReport {
        IntervalReport { lo: format_rat(&self.lo), hi: format_rat(&self.hi), approx: self.to_f64() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntervalReport {
    pub lo: String,
    pub hi: String,
    pub approx: f64,
}

/// Disjoint isolating intervals for the distinct real roots, in increasing
/// order.
pub fn isolate_roots(p: &UniPoly) -> Vec<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let seq = sturm_sequence(p);
    let b = cauchy_bound(&seq[0]);
    let mut out = Vec::new();
    isolate_in(&seq, -b.clone(), b, &mut out);
    out
}

/// Roots in `(lo, hi]`. Sturm counts are exact for half-open intervals even
/// when an endpoint is a root.
fn isolate_in(seq: &[UniPoly], lo: Rat, hi: Rat, out: &mut Vec<RootInterval>) {
    let n = count_with(seq, Some((&lo, &hi)));
    if n == 0 {
        return;
    }
    if n == 1 {
        if seq[0].sign_at(&hi) == 0 {
            out.push(RootInterval { lo: hi.clone(), hi });
            return;
        }
        if seq[0].sign_at(&lo) != 0 {
            out.push(RootInterval { lo, hi });
            return;
        }
    }
    let mid = (&lo + &hi) / Rat::from_integer(2.into());
    isolate_in(seq, lo, mid.clone(), out);
    isolate_in(seq, mid, hi, out);
}

/// Bisect an isolating interval of `p` until its width is at most `width`.
pub fn refine(p: &UniPoly, iv: &RootInterval, width: &Rat) -> RootInterval {
    let q = p.squarefree_part();
    let mut iv = iv.clone();
    if iv.is_exact() {
        return iv;
    }
    let s_lo = q.sign_at(&iv.lo);
    while &iv.width() > width {
        let mid = iv.midpoint();
        let s = q.sign_at(&mid);
        if s == 0 {
            return RootInterval { lo: mid.clone(), hi: mid };
        }
        if s == s_lo {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
    iv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat::rat;

    #[test]
    fn small_counts() {
        assert_eq!(sturm_count(&UniPoly::from_ints(&[1, 0, 1]), None), 0);
        assert_eq!(sturm_count(&UniPoly::from_ints(&[0, -1, 0, 1]), None), 3);
        let r = (rat(-1, 2), rat(2, 1));
        assert_eq!(sturm_count(&UniPoly::from_ints(&[0, -1, 0, 1]), Some((&r.0, &r.1))), 2);
    }

    #[test]
    fn isolation_with_rational_roots() {
        let p = UniPoly::from_ints(&[0, -1, 0, 1]);
        let ivs = isolate_roots(&p);
        assert_eq!(ivs.len(), 3);
        assert!(ivs.windows(2).all(|w| w[0].hi <= w[1].lo));
        let dbl = UniPoly::from_ints(&[1, -2, 1]);
        assert_eq!(isolate_roots(&dbl).len(), 1);
    }

    #[test]
    fn refine_sqrt2() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let ivs = isolate_roots(&p);
        assert_eq!(ivs.len(), 2);
        let w = rat(1, 1 << 20);
        let r = refine(&p, &ivs[1], &w);
        assert!(r.width() <= w);
        assert!((r.to_f64() - 2f64.sqrt()).abs() < 1e-6);
    }
}
