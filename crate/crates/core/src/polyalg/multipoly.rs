use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::monomial::{Monomial, MAX_VARS};
use super::rat::Rat;
use crate::error::{Error, Result};


/// Ordered list of ring variables. The first variable is the largest in the
/// monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.len() > MAX_VARS {
            return Err(Error::InvalidArgument(format!(
                "{} variables exceed the supported maximum {MAX_VARS}",
                vars.len()
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || v == "sqrt" {
                return Err(Error::InvalidArgument(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable {v:?}")));
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    /// Coefficient ring of the degree-`d` family: `prefix2, ..., prefixd`.
    pub fn family(prefix: &str, d: usize) -> Arc<Ring> {
        assert!(d >= 2, "family degree must be at least 2");
        Ring::new((2..=d).map(|j| format!("{prefix}{j}"))).expect("family ring")
    }

    /// Ring `a2, ..., ad`.
    pub fn a_family(d: usize) -> Arc<Ring> {
        Self::family("a", d)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Quasi-homogeneous weights `k - 1` for variables named `<letter>k`.
    pub fn family_weights(&self) -> Option<Vec<u32>> {
        self.vars
            .iter()
            .map(|v| {
                let digits = v.trim_start_matches(|c: char| c.is_ascii_alphabetic());
                digits.parse::<u32>().ok().filter(|&k| k >= 2).map(|k| k - 1)
            })
            .collect()
    }

    pub fn describe(&self) -> String {
        self.vars.join(",")
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in strictly decreasing grevlex order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Rat)>,
}

fn check_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch(a.describe(), b.describe()))
    }
}

impl MultiPoly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Rat) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((Monomial::ONE, c));
        }
        p
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rat::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        MultiPoly {
            ring: ring.clone(),
            terms: vec![(Monomial::var(i), Rat::one())],
        }
    }

    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::InvalidArgument(format!("no variable {name} in ring {}", ring.describe())))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rat) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// Canonicalize an arbitrary list of terms (duplicates are summed).
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut acc: HashMap<Monomial, Rat> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_insert_with(Rat::zero) += c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<Ring>, acc: HashMap<Monomial, Rat>) -> Self {
        let mut terms: Vec<(Monomial, Rat)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MultiPoly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Terms in decreasing grevlex order.
    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Rat {
        self.terms
            .last()
            .filter(|(m, _)| m.is_one())
            .map_or_else(Rat::zero, |(_, c)| c.clone())
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map_or_else(|_| Rat::zero(), |i| self.terms[i].1.clone())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        check_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        check_ring(&self.ring, &other.ring)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &MultiPoly, subtract: bool) -> MultiPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if subtract { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if subtract { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, if subtract { -c } else { c.clone() })));
        MultiPoly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        check_ring(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(m, c));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_term(m, c));
        }
        let mut acc: HashMap<Monomial, Rat> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    /// Multiply by the term `c * m`; grevlex is compatible with
    /// multiplication so the order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        self.mul_term(&Monomial::ONE, c)
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ring);
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = divisor.leading_term()?;
        if self.ring != divisor.ring {
            return None;
        }
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term() {
            let qm = dm.quotient_of(m)?;
            let qc = c / dc;
            rem = rem.merge(&divisor.mul_term(&qm, &qc), true);
            quot.push((qm, qc));
        }
        // quotient terms come out in decreasing order
        Some(MultiPoly { ring: self.ring.clone(), terms: quot })
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            m.lower(i).map(|low| (low, c * Rat::from_integer(m.exp(i).into())))
        });
        Self::from_terms(&self.ring, terms)
    }

    /// Evaluate at a point with one value per ring variable.
    pub fn eval<F: crate::linalg::Field>(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.ring.nvars(), "point dimension");
        let n = point.len();
        // cache powers per variable
        let mut powers: Vec<Vec<F>> = vec![vec![F::one()]; n];
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_rat(c);
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(&point[i]);
                    pw.push(next);
                }
                t = t.mul(&pw[e]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute a polynomial (same ring) for variable `i`.
    pub fn substitute(&self, i: usize, value: &MultiPoly) -> Result<MultiPoly> {
        check_ring(&self.ring, &value.ring)?;
        // group by exponent of variable i
        let mut groups: Vec<Vec<(Monomial, Rat)>> = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(i);
            let e = e as usize;
            if groups.len() <= e {
                groups.resize_with(e + 1, Vec::new);
            }
            groups[e].push((rest, c.clone()));
        }
        let mut acc = Self::zero(&self.ring);
        for g in groups.into_iter().rev() {
            acc = &acc * value;
            acc = &acc + &Self::from_terms(&self.ring, g);
        }
        Ok(acc)
    }

    /// Substitute a rational constant for variable `i`.
    pub fn substitute_value(&self, i: usize, value: &Rat) -> MultiPoly {
        self.substitute(i, &Self::constant(&self.ring, value.clone()))
            .expect("same ring")
    }

    /// Re-express in a ring containing every variable that occurs here.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<MultiPoly> {
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars().iter().enumerate() {
            match target.index_of(v) {
                Some(j) => map.push(j),
                None => {
                    if self.terms.iter().any(|(m, _)| m.exp(i) > 0) {
                        return Err(Error::RingMismatch(self.ring.describe(), target.describe()));
                    }
                    // unused variable: park it anywhere, its exponent is zero
                    map.push(0);
                }
            }
        }
        Ok(Self::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.remap(&map), c.clone())),
        ))
    }

    /// Specialize into `target`: variables absent from `target` are set to 0.
    pub fn restrict(&self, target: &Arc<Ring>) -> MultiPoly {
        let map: Vec<Option<usize>> = self.ring.vars().iter().map(|v| target.index_of(v)).collect();
        let kept = self.terms.iter().filter_map(|(m, c)| {
            let mut dense = vec![0u32; target.nvars()];
            for (i, slot) in map.iter().enumerate() {
                let e = m.exp(i);
                match slot {
                    Some(j) => dense[*j] += e,
                    None if e > 0 => return None,
                    None => {}
                }
            }
            Some((Monomial::from_exps(&dense), c.clone()))
        });
        Self::from_terms(target, kept)
    }

    /// True iff every monomial has weighted degree `w` under `weights`.
    pub fn is_quasi_homogeneous(&self, weights: &[u32], w: u64) -> bool {
        self.terms.iter().all(|(m, _)| m.weighted_degree(weights) == w)
    }

    /// Common weighted degree, if the polynomial is nonzero and quasi-homogeneous.
    pub fn quasi_degree(&self, weights: &[u32]) -> Option<u64> {
        let w = self.terms.first()?.0.weighted_degree(weights);
        self.is_quasi_homogeneous(weights, w).then_some(w)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rat) -> Rat) -> MultiPoly {
        Self::from_terms(&self.ring, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_poly(self))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.ring.describe(), self)
    }
}

// Operator forms panic on ring mismatch; use the `checked_*` methods where the
// rings may legitimately differ.
impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::rat::int;

    fn ring() -> Arc<Ring> {
        Ring::a_family(4)
    }

    #[test]
    fn monomial_product() {
        let r = ring();
        let a2 = MultiPoly::var(&r, 0);
        let sq = &a2 * &a2;
        assert_eq!(sq.terms(), &[(Monomial::from_exps(&[2]), int(1))]);
    }

    #[test]
    fn cancellation_deletes_zero_terms() {
        let r = ring();
        let a2 = MultiPoly::var(&r, 0);
        let a3 = MultiPoly::var(&r, 1);
        let p = &(&a2 * &a2).scale(&int(-2)) - &a3.scale(&int(2));
        let q = (&a2 * &a2).scale(&int(2));
        let s = &p + &q;
        assert_eq!(s, a3.scale(&int(-2)));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let p = MultiPoly::var(&Ring::a_family(3), 0);
        let q = MultiPoly::var(&Ring::a_family(4), 0);
        assert!(matches!(p.checked_add(&q), Err(Error::RingMismatch(..))));
        // embedding makes them compatible
        assert_eq!(p.embed(&Ring::a_family(4)).unwrap(), q);
    }

    #[test]
    fn derivative_and_restrict() {
        let r = ring();
        let a2 = MultiPoly::var(&r, 0);
        let a3 = MultiPoly::var(&r, 1);
        let a4 = MultiPoly::var(&r, 2);
        let v3 = &(&a2 * &a2).scale(&int(-2)) - &a3.scale(&int(2));
        assert_eq!(v3.derivative(0), a2.scale(&int(-4)));
        assert_eq!(v3.derivative(1), MultiPoly::constant(&r, int(-2)));
        let p = &v3 + &(&a2 * &a4);
        let small = Ring::a_family(3);
        assert_eq!(p.restrict(&small), v3.restrict(&small));
    }

    #[test]
    fn substitution() {
        let r = ring();
        let a2 = MultiPoly::var(&r, 0);
        let a3 = MultiPoly::var(&r, 1);
        let p = &(&a2 * &a2) + &a3;
        let q = p.substitute(1, &(&a2 * &a2).scale(&int(-1))).unwrap();
        assert!(q.is_zero());
        assert_eq!(p.substitute_value(0, &int(3)).eval(&[int(0), int(1), int(0)]), int(10));
    }
}
