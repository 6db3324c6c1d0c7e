//! Gröbner bases under grevlex, normal forms, ideal membership and equality,
//! power membership, and the ideal-chain checks built on them.

pub mod groebner;
mod hypotheses;
pub mod io;
mod lift;

use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::polyalg::{MonomialOrder, MultiPoly, Ring};

pub use groebner::{Engine, EngineStats};
pub use hypotheses::{check_lrad, check_upper_hypotheses, LradReport, UpperReport};
pub use lift::lift_quasi_homogeneous;

use groebner::{reduce, spoly, IPoly};

/// How pairs are weighted during Buchberger's algorithm.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Weighting {
    /// Family weights `a_i -> i-1` when every generator is quasi-homogeneous
    /// for them, otherwise plain degree.
    #[default]
    Auto,
    Degree,
    Weights(Vec<u32>),
}

#[derive(Clone, Debug, Default)]
pub struct GbOptions {
    pub weighting: Weighting,
    /// Stop after all pairs of weight `<= bound` (weighted runs only).
    pub weight_bound: Option<u64>,
    pub budget: Budget,
}

/// Reduced Gröbner basis with the generators it was computed from.
///
/// Basis elements are primitive integer polynomials with positive leading
/// coefficient, stored in increasing leading-monomial order. When
/// `weight_bound` is set the basis is only valid for polynomials whose terms
/// all have weighted degree at most the bound.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    order: MonomialOrder,
    generators: Vec<MultiPoly>,
    sources: Vec<MultiPoly>,
    weights: Option<Vec<u32>>,
    weight_bound: Option<u64>,
    ipolys: Vec<IPoly>,
}

impl GroebnerBasis {
    pub(crate) fn from_engine(engine: &Engine, budget: &Budget) -> Result<Self> {
        let ipolys = engine.reduced_basis(budget)?;
        let one = crate::polyalg::Rat::from_integer(1.into());
        let generators = ipolys.iter().map(|p| p.to_multipoly(engine.ring(), &one)).collect();
        Ok(GroebnerBasis {
            ring: engine.ring().clone(),
            order: MonomialOrder::Grevlex,
            generators,
            sources: engine.sources().to_vec(),
            weights: engine.weights().map(<[u32]>::to_vec),
            weight_bound: engine.bound(),
            ipolys,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn sources(&self) -> &[MultiPoly] {
        &self.sources
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn weight_bound(&self) -> Option<u64> {
        self.weight_bound
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn is_complete(&self) -> bool {
        self.weight_bound.is_none()
    }

    /// True iff the ideal contains a nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(MultiPoly::is_constant)
    }

    fn check_in_range(&self, p: &MultiPoly) -> Result<()> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch(p.ring().describe(), self.ring.describe()));
        }
        if let Some(b) = self.weight_bound {
            let ws = self.weights.as_deref().unwrap_or(&[]);
            let too_heavy = p.terms().iter().any(|(m, _)| {
                if ws.is_empty() {
                    m.degree() as u64 > b
                } else {
                    m.weighted_degree(ws) > b
                }
            });
            if too_heavy {
                return Err(Error::TruncatedBasis(format!(
                    "basis is complete only up to weight {b}"
                )));
            }
        }
        Ok(())
    }

    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        self.normal_form_with(p, &Budget::unlimited())
    }

    pub fn normal_form_with(&self, p: &MultiPoly, budget: &Budget) -> Result<MultiPoly> {
        self.check_in_range(p)?;
        let (ip, l) = IPoly::from_multipoly(p);
        let refs: Vec<&IPoly> = self.ipolys.iter().collect();
        let (r, s) = reduce(ip, &refs, true, budget)?;
        Ok(r.to_multipoly(&self.ring, &(s * crate::polyalg::Rat::from_integer(l))))
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Re-check the Buchberger criterion: every S-polynomial of basis pairs
    /// reduces to zero (pairs above the weight bound are skipped).
    pub fn verify_s_pairs(&self, budget: &Budget) -> Result<bool> {
        let refs: Vec<&IPoly> = self.ipolys.iter().collect();
        for i in 0..self.ipolys.len() {
            for j in i + 1..self.ipolys.len() {
                let (f, g) = (&self.ipolys[i], &self.ipolys[j]);
                let l = f.lm().lcm(g.lm());
                if let (Some(b), Some(ws)) = (self.weight_bound, self.weights.as_deref()) {
                    if l.weighted_degree(ws) > b {
                        continue;
                    }
                }
                let (r, _) = reduce(spoly(f, g), &refs, true, budget)?;
                if !r.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn resolve_weights(ring: &Ring, gens: &[MultiPoly], w: &Weighting) -> Option<Vec<u32>> {
    match w {
        Weighting::Degree => None,
        Weighting::Weights(ws) => Some(ws.clone()),
        Weighting::Auto => {
            let ws = ring.family_weights()?;
            gens.iter()
                .all(|g| g.is_zero() || g.quasi_degree(&ws).is_some())
                .then_some(ws)
        }
    }
}

/// Reduced Gröbner basis of `gens` under `order` with the default budget.
pub fn groebner(gens: &[MultiPoly], order: MonomialOrder) -> Result<GroebnerBasis> {
    let _ = order;
    groebner_with(gens, &GbOptions::default())
}

pub fn groebner_with(gens: &[MultiPoly], opts: &GbOptions) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::InvalidArgument("empty generator list has no ring".into()));
    };
    let ring = first.ring().clone();
    let weights = resolve_weights(&ring, gens, &opts.weighting);
    if opts.weight_bound.is_some() && weights.is_none() {
        return Err(Error::InvalidArgument(
            "a weight bound needs quasi-homogeneous generators".into(),
        ));
    }
    let mut engine = Engine::new(&ring, weights);
    engine.add_generators(gens)?;
    engine.run(opts.weight_bound, &opts.budget)?;
    GroebnerBasis::from_engine(&engine, &opts.budget)
}

/// Gröbner basis of the empty ideal in `ring`.
pub fn empty_basis(ring: &Arc<Ring>) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        order: MonomialOrder::Grevlex,
        generators: Vec::new(),
        sources: Vec::new(),
        weights: None,
        weight_bound: None,
        ipolys: Vec::new(),
    }
}

pub fn normal_form(p: &MultiPoly, gb: &GroebnerBasis) -> Result<MultiPoly> {
    gb.normal_form(p)
}

pub fn ideal_member(p: &MultiPoly, gb: &GroebnerBasis) -> Result<bool> {
    gb.contains(p)
}

/// Equality of the two ideals by mutual membership of source generators.
pub fn ideal_equal(a: &GroebnerBasis, b: &GroebnerBasis) -> Result<bool> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch(a.ring.describe(), b.ring.describe()));
    }
    for p in a.sources() {
        if !b.contains(p)? {
            return Ok(false);
        }
    }
    for p in b.sources() {
        if !a.contains(p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `n <= n_max` with `p^n` in the ideal.
pub fn power_member(p: &MultiPoly, gb: &GroebnerBasis, n_max: u32) -> Result<Option<u32>> {
    power_member_with(p, gb, n_max, &Budget::unlimited())
}

pub fn power_member_with(
    p: &MultiPoly,
    gb: &GroebnerBasis,
    n_max: u32,
    budget: &Budget,
) -> Result<Option<u32>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let q1 = gb.normal_form_with(p, budget)?;
    let mut q = q1.clone();
    for n in 1..=n_max {
        if q.is_zero() {
            return Ok(Some(n));
        }
        if n < n_max {
            // p^(n+1) ≡ NF(p^n) * NF(p)
            q = gb.normal_form_with(&(&q * &q1), budget)?;
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    fn p(r: &Arc<Ring>, s: &str) -> MultiPoly {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn principal_monomial_ideal() {
        let r = Ring::a_family(3);
        let gb = groebner(&[p(&r, "a2")], MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.generators(), &[p(&r, "a2")]);
        assert!(gb.contains(&p(&r, "a2*a3 + a2^2")).unwrap());
        assert!(!gb.contains(&p(&r, "a3")).unwrap());
    }

    #[test]
    fn hand_elimination() {
        let r = Ring::a_family(3);
        let gb = groebner(&[p(&r, "a2^2 - a3"), p(&r, "a3")], MonomialOrder::Grevlex).unwrap();
        assert!(gb.contains(&p(&r, "a2^2")).unwrap());
        assert!(gb.verify_s_pairs(&Budget::unlimited()).unwrap());
    }

    #[test]
    fn rational_normal_form() {
        // x^2 + y^2 - 1, x - y in variables a2 > a3
        let r = Ring::a_family(3);
        let gens = [p(&r, "a2^2 + a3^2 - 1"), p(&r, "a2 - a3")];
        let gb = groebner_with(
            &gens,
            &GbOptions { weighting: Weighting::Degree, ..Default::default() },
        )
        .unwrap();
        assert!(gb.verify_s_pairs(&Budget::unlimited()).unwrap());
        // a3^2 ≡ 1/2
        assert_eq!(gb.normal_form(&p(&r, "a3^2")).unwrap(), p(&r, "1/2"));
        assert_eq!(gb.normal_form(&p(&r, "3*a2*a3")).unwrap(), p(&r, "3/2"));
    }

    #[test]
    fn power_membership() {
        let r = Ring::a_family(3);
        let gb = groebner(&[p(&r, "a2^4")], MonomialOrder::Grevlex).unwrap();
        assert_eq!(power_member(&p(&r, "a2"), &gb, 5).unwrap(), Some(4));
        assert_eq!(power_member(&p(&r, "a2^2"), &gb, 5).unwrap(), Some(2));
        assert_eq!(power_member(&p(&r, "a3"), &gb, 5).unwrap(), None);
    }

    #[test]
    fn equality() {
        let r = Ring::a_family(3);
        let a = groebner(&[p(&r, "a2")], MonomialOrder::Grevlex).unwrap();
        let b = groebner(&[p(&r, "a2^2")], MonomialOrder::Grevlex).unwrap();
        assert!(!ideal_equal(&a, &b).unwrap());
        assert!(ideal_equal(&a, &a).unwrap());
    }
}
