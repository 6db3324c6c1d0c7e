//! Buchberger's algorithm over integer-coefficient polynomials.
//!
//! Polynomials are kept primitive with a positive leading coefficient, and
//! reduction is fraction-free: each step multiplies the working polynomial by
//! a small integer instead of dividing. A scalar tracker records those factors
//! so the rational normal form can be recovered exactly.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::polyalg::rat::denom_lcm;
use crate::polyalg::{Monomial, MultiPoly, Rat, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    // descending grevlex, nonzero coefficients
    pub terms: Vec<(Monomial, BigInt)>,
}

impl IPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    /// Integer multiple `L * p` of a rational polynomial; returns `(L*p, L)`.
    pub fn from_multipoly(p: &MultiPoly) -> (IPoly, BigInt) {
        let l = denom_lcm(p.terms().iter().map(|(_, c)| c));
        let terms = p
            .terms()
            .iter()
            .map(|(m, c)| (*m, (c * Rat::from_integer(l.clone())).to_integer()))
            .collect();
        (IPoly { terms }, l)
    }

    /// `self / s` as a rational polynomial.
    pub fn to_multipoly(&self, ring: &Arc<Ring>, s: &Rat) -> MultiPoly {
        MultiPoly::from_terms(
            ring,
            self.terms.iter().map(|(m, c)| (*m, Rat::from_integer(c.clone()) / s)),
        )
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide by the content, signed so the leading coefficient is positive.
    /// Returns the divisor.
    pub fn make_primitive(&mut self) -> BigInt {
        if self.is_zero() {
            return BigInt::one();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c = &*c / &g;
            }
        }
        g
    }

    pub fn mul_monomial(&self, t: &Monomial) -> IPoly {
        IPoly { terms: self.terms.iter().map(|(m, c)| (m.mul(t), c.clone())).collect() }
    }

    /// `alpha * self - beta * t * g`, merging sorted term lists.
    fn combine(&self, alpha: &BigInt, beta: &BigInt, t: &Monomial, g: &IPoly) -> IPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(m, c)| (m.mul(t), c)).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ma, _)), Some((mb, _))) => ma.cmp(mb),
            };
            match ord {
                Ordering::Greater => {
                    let (m, c) = a.next().unwrap();
                    out.push((*m, c * alpha));
                }
                Ordering::Less => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, -(c * beta)));
                }
                Ordering::Equal => {
                    let (m, ca) = a.next().unwrap();
                    let (_, cb) = b.next().unwrap();
                    let c = ca * alpha - cb * beta;
                    if !c.is_zero() {
                        out.push((*m, c));
                    }
                }
            }
        }
        IPoly { terms: out }
    }

    fn max_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }
}

/// Reduce `p` modulo `basis`. With `full` every term is reduced, otherwise
/// only the head. Returns `(r, s)` with `p ≡ r / s` modulo the ideal.
pub(crate) fn reduce(
    p: IPoly,
    basis: &[&IPoly],
    full: bool,
    budget: &Budget,
) -> Result<(IPoly, Rat)> {
    let mut p = p;
    let mut s = Rat::one();
    let mut pos = 0;
    let mut steps = 0usize;
    let mut bits_at_cleanup = p.max_bits();
    while pos < p.terms.len() {
        let m = p.terms[pos].0;
        let divisor = basis.iter().find(|g| g.lm().divides(&m));
        let Some(g) = divisor else {
            if !full {
                break;
            }
            pos += 1;
            continue;
        };
        let t = g.lm().quotient_of(&m).expect("divides");
        let c = &p.terms[pos].1;
        let a = g.lc();
        let h = c.gcd(a);
        let alpha = a / &h;
        let beta = c / &h;
        p = p.combine(&alpha, &beta, &t, g);
        s *= Rat::from_integer(alpha);
        steps += 1;
        if p.max_bits() > bits_at_cleanup + 256 {
            let g = p.content();
            if !g.is_zero() && !g.is_one() {
                for (_, c) in &mut p.terms {
                    *c = &*c / &g;
                }
                s /= Rat::from_integer(g);
            }
            bits_at_cleanup = p.max_bits();
        }
        if steps % 64 == 0 {
            budget.check("polynomial reduction", || format!("{steps} reduction steps"))?;
        }
    }
    let g = p.content();
    if !g.is_zero() && !g.is_one() {
        for (_, c) in &mut p.terms {
            *c = &*c / &g;
        }
        s /= Rat::from_integer(g);
    }
    Ok((p, s))
}

pub(crate) fn spoly(f: &IPoly, g: &IPoly) -> IPoly {
    let l = f.lm().lcm(g.lm());
    let tf = f.lm().quotient_of(&l).unwrap();
    let tg = g.lm().quotient_of(&l).unwrap();
    let h = f.lc().gcd(g.lc());
    let alpha = g.lc() / &h;
    let beta = f.lc() / &h;
    f.mul_monomial(&tf).combine(&alpha, &beta, &tg, g)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    weight: u64,
}

impl Pair {
    fn key(&self) -> (u64, Monomial, usize, usize) {
        (self.weight, self.lcm, self.j, self.i)
    }
}

#[derive(Clone, Debug, Default)]
pub struct EngineStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub pairs_pruned: usize,
}

/// Incremental Buchberger state.
///
/// With weights, pairs are processed by increasing weighted degree of their
/// lcm and the run can be stopped at a weight bound: for quasi-homogeneous
/// input the basis is then correct for every polynomial of weight up to the
/// bound. Without weights the standard degree-then-grevlex selection is used.
#[derive(Clone, Debug)]
pub struct Engine {
    ring: Arc<Ring>,
    weights: Option<Vec<u32>>,
    polys: Vec<IPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    pending: Vec<(u64, IPoly)>,
    bound: Option<u64>,
    sources: Vec<MultiPoly>,
    pub stats: EngineStats,
}

impl Engine {
    /// `weights` must make every generator quasi-homogeneous.
    pub fn new(ring: &Arc<Ring>, weights: Option<Vec<u32>>) -> Self {
        Engine {
            ring: ring.clone(),
            weights,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
            pending: Vec::new(),
            bound: Some(0),
            sources: Vec::new(),
            stats: EngineStats::default(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    /// Weight bound reached so far (`None` means complete).
    pub fn bound(&self) -> Option<u64> {
        self.bound
    }

    pub fn sources(&self) -> &[MultiPoly] {
        &self.sources
    }

    fn weight_of(&self, m: &Monomial) -> u64 {
        match &self.weights {
            Some(w) => m.weighted_degree(w),
            None => m.degree() as u64,
        }
    }

    pub fn add_generators(&mut self, gens: &[MultiPoly]) -> Result<()> {
        for g in gens {
            if g.ring() != &self.ring {
                return Err(Error::RingMismatch(g.ring().describe(), self.ring.describe()));
            }
            if g.is_zero() {
                continue;
            }
            let w = match &self.weights {
                Some(ws) => g.quasi_degree(ws).ok_or_else(|| {
                    Error::InvalidArgument(format!("generator {g} is not quasi-homogeneous"))
                })?,
                None => 0,
            };
            let (ip, _) = IPoly::from_multipoly(g);
            self.pending.push((w, ip));
            self.sources.push(g.clone());
        }
        self.pending.sort_by_key(|(w, _)| *w);
        // new input invalidates completeness claims above its weight
        if let (Some(b), Some(min)) = (self.bound, self.pending.first().map(|(w, _)| *w)) {
            if self.weights.is_some() && min <= b {
                self.bound = Some(min.saturating_sub(1));
            }
        }
        if self.weights.is_none() {
            self.bound = Some(0);
        }
        Ok(())
    }

    fn active_refs(&self) -> Vec<&IPoly> {
        self.active.iter().map(|&i| &self.polys[i]).collect()
    }

    fn insert(&mut self, h: IPoly) {
        let hi = self.polys.len();
        let hlm = *h.lm();
        self.polys.push(h);
        // Gebauer–Möller update
        let cands: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| {
                let lcm = self.polys[g].lm().lcm(&hlm);
                Pair { i: g, j: hi, lcm, weight: self.weight_of(&lcm) }
            })
            .collect();
        let coprime = |p: &Pair, polys: &Vec<IPoly>| polys[p.i].lm().coprime(&hlm);
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in cands.iter().enumerate() {
            if coprime(p, &self.polys) {
                kept.push(p.clone());
                continue;
            }
            let strictly_dominated = cands
                .iter()
                .enumerate()
                .any(|(k, q)| k != idx && q.lcm.divides(&p.lcm) && q.lcm != p.lcm);
            let equal_earlier = cands[..idx].iter().any(|q| q.lcm == p.lcm)
                || kept.iter().any(|q| q.lcm == p.lcm);
            if !strictly_dominated && !equal_earlier {
                kept.push(p.clone());
            }
        }
        let before = self.pairs.len() + cands.len();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(hlm.divides(&p.lcm)
                && polys[p.i].lm().lcm(&hlm) != p.lcm
                && polys[p.j].lm().lcm(&hlm) != p.lcm)
        });
        kept.retain(|p| !polys[p.i].lm().coprime(&hlm));
        self.pairs.extend(kept);
        self.stats.pairs_pruned += before - self.pairs.len();
        let polys = &self.polys;
        self.active.retain(|&g| !hlm.divides(polys[g].lm()));
        self.active.push(hi);
    }

    /// Run until every pair and generator of weight `<= bound` is processed
    /// (`None`: run to completion).
    pub fn run(&mut self, bound: Option<u64>, budget: &Budget) -> Result<()> {
        let within = |w: u64| bound.is_none_or(|b| w <= b);
        loop {
            budget.check("Groebner basis", || {
                format!(
                    "basis size {}, {} pairs pending, {} reduced",
                    self.active.len(),
                    self.pairs.len(),
                    self.stats.pairs_reduced
                )
            })?;
            let next_pair = self
                .pairs
                .iter()
                .enumerate()
                .filter(|(_, p)| within(p.weight))
                .min_by(|(_, a), (_, b)| a.key().cmp(&b.key()))
                .map(|(i, p)| (i, p.weight));
            let next_gen = self.pending.first().map(|(w, _)| *w).filter(|&w| within(w));
            let take_gen = match (next_gen, next_pair) {
                (None, None) => break,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some(gw), Some((_, pw))) => gw <= pw,
            };
            let h = if take_gen {
                self.pending.remove(0).1
            } else {
                let (idx, _) = next_pair.unwrap();
                let p = self.pairs.swap_remove(idx);
                self.stats.pairs_reduced += 1;
                spoly(&self.polys[p.i], &self.polys[p.j])
            };
            let (mut r, _) = reduce(h, &self.active_refs(), true, budget)?;
            if r.is_zero() {
                self.stats.zero_reductions += 1;
                continue;
            }
            r.make_primitive();
            self.insert(r);
        }
        self.bound = match (self.bound, bound) {
            (_, None) => None,
            (None, Some(_)) => None,
            (Some(old), Some(b)) => Some(old.max(b)),
        };
        if self.weights.is_none() && bound.is_some() {
            // degree-bounded runs without weights certify nothing
            self.bound = Some(0);
        }
        if self.pairs.is_empty() && self.pending.is_empty() {
            self.bound = None;
        }
        Ok(())
    }

    /// Rational normal form modulo the current basis.
    pub(crate) fn reduce_full(&self, p: &MultiPoly, budget: &Budget) -> Result<MultiPoly> {
        let (ip, l) = IPoly::from_multipoly(p);
        let (r, s) = reduce(ip, &self.active_refs(), true, budget)?;
        Ok(r.to_multipoly(&self.ring, &(s * Rat::from_integer(l))))
    }

    /// Inter-reduced basis polynomials (primitive integer form), sorted by
    /// increasing leading monomial.
    pub(crate) fn reduced_basis(&self, budget: &Budget) -> Result<Vec<IPoly>> {
        let mut polys: Vec<IPoly> = self.active.iter().map(|&i| self.polys[i].clone()).collect();
        polys.sort_by(|a, b| a.lm().cmp(b.lm()));
        for k in 0..polys.len() {
            let others: Vec<&IPoly> =
                polys.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
            let head = IPoly { terms: polys[k].terms[..1].to_vec() };
            let tail = IPoly { terms: polys[k].terms[1..].to_vec() };
            let (rt, s) = reduce(tail, &others, true, budget)?;
            // head * s + rt, with s = alpha / content
            let (num, den) = (s.numer().clone(), s.denom().clone());
            let mut terms = vec![(head.terms[0].0, &head.terms[0].1 * &num)];
            terms.extend(rt.terms.into_iter().map(|(m, c)| (m, c * &den)));
            let mut p = IPoly { terms };
            p.make_primitive();
            polys[k] = p;
        }
        Ok(polys)
    }

    pub fn basis_len(&self) -> usize {
        self.active.len()
    }
}
