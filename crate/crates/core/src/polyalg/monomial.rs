use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Largest number of ring variables a [`Monomial`] can carry.
pub const MAX_VARS: usize = 24;

/// Exponent vector of a monomial.
///
/// Exponents beyond the ring dimension are always zero, so two monomials from
/// the same ring compare and hash consistently. `Ord` is graded reverse
/// lexicographic with the first variable largest.
#[derive(Clone, Copy)]
pub struct Monomial {
    deg: u32,
    mask: u32,
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        deg: 0,
        mask: 0,
        exps: [0; MAX_VARS],
    };

    pub fn from_exps(exps: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::ONE;
        for (i, &e) in exps.iter().enumerate() {
            let e16 = u16::try_from(e).expect("exponent overflow");
            m.exps[i] = e16;
            m.deg += e;
            if e > 0 {
                m.mask |= 1 << i;
            }
        }
        m
    }

    pub fn var(i: usize) -> Monomial {
        Self::var_pow(i, 1)
    }

    pub fn var_pow(i: usize, e: u32) -> Monomial {
        assert!(i < MAX_VARS, "variable index out of range");
        let mut m = Monomial::ONE;
        if e > 0 {
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
            m.deg = e;
            m.mask = 1 << i;
        }
        m
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| e as u32).collect()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// Weighted degree `sum_i w_i e_i`.
    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        weights
            .iter()
            .zip(self.exps.iter())
            .map(|(&w, &e)| w as u64 * e as u64)
            .sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            let e = self.exps[i] as u32 + other.exps[i] as u32;
            m.exps[i] = u16::try_from(e).expect("exponent overflow");
        }
        m.deg = self.deg + other.deg;
        m.mask = self.mask | other.mask;
        m
    }

    pub fn pow(&self, n: u32) -> Monomial {
        let mut m = Monomial::ONE;
        if n == 0 {
            return m;
        }
        for i in 0..MAX_VARS {
            m.exps[i] = u16::try_from(self.exps[i] as u32 * n).expect("exponent overflow");
        }
        m.deg = self.deg * n;
        m.mask = self.mask;
        m
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 || self.deg > other.deg {
            return false;
        }
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            let e = other.exps[i] - self.exps[i];
            m.exps[i] = e;
            if e > 0 {
                m.mask |= 1 << i;
            }
        }
        m.deg = other.deg - self.deg;
        Some(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for i in 0..MAX_VARS {
            let e = self.exps[i].max(other.exps[i]);
            m.exps[i] = e;
            m.deg += e as u32;
        }
        m.mask = self.mask | other.mask;
        m
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.mask & other.mask == 0
    }

    /// Exponent of variable `i` lowered by one (partial derivative support).
    pub(crate) fn lower(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = *self;
        m.exps[i] -= 1;
        m.deg -= 1;
        if m.exps[i] == 0 {
            m.mask &= !(1 << i);
        }
        Some(m)
    }

    /// Drop variable `i`, returning its exponent and the remaining monomial.
    pub(crate) fn split_var(&self, i: usize) -> (u32, Monomial) {
        let e = self.exps[i] as u32;
        let mut m = *self;
        m.exps[i] = 0;
        m.deg -= e;
        m.mask &= !(1 << i);
        (e, m)
    }

    /// Reindex variables: variable `i` moves to `map[i]`.
    pub(crate) fn remap(&self, map: &[usize]) -> Monomial {
        let mut m = Monomial::ONE;
        for (i, &j) in map.iter().enumerate() {
            let e = self.exps[i];
            if e > 0 {
                m.exps[j] += e;
                m.mask |= 1 << j;
            }
        }
        m.deg = self.deg;
        m
    }
}

/// All monomials in `weights.len()` variables of weighted degree exactly `w`,
/// in decreasing grevlex order. Zero weights are not allowed.
pub fn monomials_of_weight(weights: &[u32], w: u64) -> Vec<Monomial> {
    assert!(weights.iter().all(|&x| x > 0), "weights must be positive");
    let mut out = Vec::new();
    let mut exps = vec![0u32; weights.len()];
    fn rec(i: usize, left: u64, weights: &[u32], exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::from_exps(exps));
            }
            return;
        }
        let wi = weights[i] as u64;
        for e in 0..=left / wi {
            exps[i] = e as u32;
            rec(i + 1, left - e * wi, weights, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, w, weights, &mut exps, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Graded reverse lexicographic comparison.
///
/// Higher total degree wins; on ties the monomial with the strictly smaller
/// exponent in the last differing variable (scanning from the end) is larger.
pub fn grevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    match a.deg.cmp(&b.deg) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..MAX_VARS).rev() {
        let (x, y) = (a.exps[i], b.exps[i]);
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_cmp(self, other)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = (0..MAX_VARS).rev().find(|&i| self.exps[i] != 0).map_or(0, |i| i + 1);
        write!(f, "Monomial{:?}", &self.exps[..last])
    }
}

/// Monomial orders supported by the polynomial layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex_cmp(a, b),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_dominates() {
        let a2sq = Monomial::from_exps(&[2, 0]);
        let a3 = Monomial::from_exps(&[0, 1]);
        assert_eq!(grevlex_cmp(&a2sq, &a3), Ordering::Greater);
    }

    #[test]
    fn smaller_last_exponent_wins_ties() {
        // a2*a4 vs a3^2 in (a2, a3, a4)
        let a2a4 = Monomial::from_exps(&[1, 0, 1]);
        let a3sq = Monomial::from_exps(&[0, 2, 0]);
        assert_eq!(grevlex_cmp(&a3sq, &a2a4), Ordering::Greater);
        assert_eq!(grevlex_cmp(&a2a4, &a2a4), Ordering::Equal);
    }

    #[test]
    fn divisibility_and_quotient() {
        let m = Monomial::from_exps(&[2, 1, 3]);
        let n = Monomial::from_exps(&[1, 0, 2]);
        assert!(n.divides(&m));
        assert!(!m.divides(&n));
        assert_eq!(n.quotient_of(&m), Some(Monomial::from_exps(&[1, 1, 1])));
        assert_eq!(n.lcm(&Monomial::from_exps(&[0, 4, 0])), Monomial::from_exps(&[1, 4, 2]));
    }
}
