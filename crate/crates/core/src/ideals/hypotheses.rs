//! Ideal-chain checks behind the cyclicity upper bounds.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ideals::{power_member_with, Engine, GroebnerBasis};
use crate::polyalg::MultiPoly;
use crate::stability::{stability_constants, Reducer};

#[derive(Clone, Debug, Serialize)]
pub struct UpperReport {
    pub d: usize,
    /// Smallest `m` meeting the hypotheses, if found.
    pub m: Option<usize>,
    /// First `k < m` at which the chain condition failed.
    pub failed_at: Option<usize>,
    /// `(k, chain condition holds)` for each `k` examined below `m`.
    pub chain: Vec<(usize, bool)>,
    /// `W_j` outside `<V_3..V_{2k+1}>` at the last examined `k`.
    pub outside: Vec<usize>,
}

impl UpperReport {
    pub fn cyclicity_bound(&self) -> Option<usize> {
        self.m.map(|m| m - 1)
    }
}

fn basis_of(
    vs: &BTreeMap<usize, MultiPoly>,
    k: usize,
    bound: u64,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    let ring = vs[&3].ring().clone();
    let gens: Vec<MultiPoly> =
        vs.iter().filter(|(i, _)| **i <= 2 * k + 1).map(|(_, p)| p.clone()).collect();
    let mut engine = Engine::new(&ring, ring.family_weights());
    engine.add_generators(&gens)?;
    engine.run(Some(bound), budget)?;
    GroebnerBasis::from_engine(&engine, budget)
}

/// Find the smallest `m` such that `<V_3..V_{2m+1}> = <W_3..W_{d^2}>`, checking
/// on the way that `W_j` lies in `<V_3..V_{2k+1}>` for `j <= 2k+2` and every
/// `k < m`. The reverse inclusions hold by construction of the `V_k`.
pub fn check_upper_hypotheses(d: usize, budget: &Budget) -> Result<UpperReport> {
    let table = stability_constants(d)?;
    let top = d * d;
    let mut reducer = Reducer::new(&table);
    let mut report = UpperReport { d, m: None, failed_at: None, chain: Vec::new(), outside: Vec::new() };
    let mut k = 1;
    while 2 * k + 1 <= top {
        reducer.extend_to(2 * k + 1, budget)?;
        let vs = reducer.table().vs().clone();
        let gb = basis_of(&vs, k, top as u64 - 1, budget)?;
        let mut outside = Vec::new();
        for (j, w) in table.ws() {
            budget.check("upper hypotheses", || format!("k = {k}, testing W_{j}"))?;
            if !gb.contains(w)? {
                outside.push(*j);
            }
        }
        if outside.is_empty() {
            report.m = Some(k);
            report.outside.clear();
            return Ok(report);
        }
        let chain_ok = outside.iter().all(|&j| j > 2 * k + 2);
        report.chain.push((k, chain_ok));
        report.outside = outside;
        if !chain_ok {
            report.failed_at = Some(k);
            return Ok(report);
        }
        k += 1;
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct LradReport {
    pub d: usize,
    pub n_max: u32,
    /// Smallest `k` for which every `W_j` has a power in `<V_3..V_{2k+1}>`.
    pub ell: Option<usize>,
    /// Exponent `n_j` for each `j` at `k = ell`.
    pub exponents: BTreeMap<usize, u32>,
    /// For each `k < ell`, the `W_j` with no power up to `n_max` in the ideal.
    pub failures: BTreeMap<usize, Vec<usize>>,
}

impl LradReport {
    pub fn max_weak_order(&self) -> Option<usize> {
        self.ell.map(|l| l - 1)
    }
}

/// Smallest `k` such that every `W_j` (`3 <= j <= d^2`) has some power
/// `W_j^n`, `n <= n_max`, in `<V_3..V_{2k+1}>`, with the full exponent profile.
pub fn check_lrad(d: usize, n_max: u32, budget: &Budget) -> Result<LradReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let table = stability_constants(d)?;
    let top = d * d;
    let bound = n_max as u64 * (top as u64 - 1);
    let mut reducer = Reducer::new(&table);
    let mut report =
        LradReport { d, n_max, ell: None, exponents: BTreeMap::new(), failures: BTreeMap::new() };
    let mut k = 1;
    while 2 * k + 1 <= top {
        reducer.extend_to(2 * k + 1, budget)?;
        let vs = reducer.table().vs().clone();
        let gb = basis_of(&vs, k, bound, budget)?;
        let mut exps = BTreeMap::new();
        let mut failed = Vec::new();
        for (j, w) in table.ws() {
            if w.is_zero() {
                exps.insert(*j, 1);
                continue;
            }
            match power_member_with(w, &gb, n_max, budget)? {
                Some(n) => {
                    exps.insert(*j, n);
                }
                None => failed.push(*j),
            }
        }
        if failed.is_empty() {
            report.ell = Some(k);
            report.exponents = exps;
            return Ok(report);
        }
        report.failures.insert(k, failed);
        k += 1;
    }
    Ok(report)
}
