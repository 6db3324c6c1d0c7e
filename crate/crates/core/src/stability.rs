//! Stability constants `W_j` of `f_a(x) = -x + sum a_j x^j` and their reduced
//! forms `V_k` (normal forms of `W_k` modulo the ideal of all earlier `W`).

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ideals::{lift_quasi_homogeneous, Engine};
use crate::polyalg::quad::common_radicand;
use crate::polyalg::series::map_series;
use crate::polyalg::{MultiPoly, QuadExt, Ring, TruncSeries};

/// The family `f_a(x) = -x + a_2 x^2 + ... + a_d x^d` as a truncated series.
#[derive(Clone, Debug)]
pub struct MapFamily {
    d: usize,
    ring: Arc<Ring>,
    order: usize,
}

impl MapFamily {
    /// Degree-`d` family expanded through `x^(d^2)`, the full degree of `f∘f`.
    pub fn new(d: usize) -> Result<Self> {
        Self::with_order(d, d * d)
    }

    pub fn with_order(d: usize, order: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidArgument(format!("degree must be at least 2, got {d}")));
        }
        if d - 1 > crate::polyalg::monomial::MAX_VARS {
            return Err(Error::InvalidArgument(format!("degree {d} has too many coefficients")));
        }
        Ok(MapFamily { d, ring: Ring::a_family(d), order })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn series(&self) -> TruncSeries {
        let coeffs = (2..=self.d).map(|j| (j, MultiPoly::var(&self.ring, j - 2)));
        map_series(&self.ring, self.order, coeffs).expect("family series")
    }

    pub fn self_composition(&self) -> TruncSeries {
        let f = self.series();
        f.compose(&f, self.order).expect("same truncation")
    }
}

/// `W_j` for `3 <= j <= order` and the reduced constants computed so far.
#[derive(Clone, Debug)]
pub struct ConstantsTable {
    d: usize,
    order: usize,
    ring: Arc<Ring>,
    w: BTreeMap<usize, MultiPoly>,
    v: BTreeMap<usize, MultiPoly>,
    even_nf: BTreeMap<usize, MultiPoly>,
}

impl ConstantsTable {
    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn w(&self, j: usize) -> Option<&MultiPoly> {
        self.w.get(&j)
    }

    pub fn v(&self, k: usize) -> Option<&MultiPoly> {
        self.v.get(&k)
    }

    pub fn ws(&self) -> &BTreeMap<usize, MultiPoly> {
        &self.w
    }

    pub fn vs(&self) -> &BTreeMap<usize, MultiPoly> {
        &self.v
    }

    /// Normal forms of the even-index `W_k` modulo their predecessors (all
    /// expected to vanish).
    pub fn even_normal_forms(&self) -> &BTreeMap<usize, MultiPoly> {
        &self.even_nf
    }

    /// Largest odd `k` with `V_k` available.
    pub fn kmax(&self) -> Option<usize> {
        self.v.keys().next_back().copied()
    }

    /// Set `a_j = 0` for `j > d`; entries are restricted to the `a_2..a_d` ring.
    pub fn specialize(&self, d: usize) -> Result<ConstantsTable> {
        if d > self.d || d < 2 {
            return Err(Error::InvalidArgument(format!(
                "cannot specialize a degree-{} table to degree {d}",
                self.d
            )));
        }
        let ring = Ring::a_family(d);
        let map = |m: &BTreeMap<usize, MultiPoly>| {
            m.iter().map(|(k, p)| (*k, p.restrict(&ring))).collect::<BTreeMap<_, _>>()
        };
        Ok(ConstantsTable {
            d,
            order: self.order,
            ring: ring.clone(),
            w: map(&self.w),
            v: map(&self.v),
            even_nf: map(&self.even_nf),
        })
    }

    /// Express `W_j` through the reduced constants: returns `(k, q_k)` with
    /// `W_j = [V_j] + sum q_k V_k` over odd `k < j` (`V_j` only for odd `j`).
    pub fn relation(&self, j: usize) -> Result<Option<Vec<(usize, MultiPoly)>>> {
        let wj = self
            .w(j)
            .ok_or_else(|| Error::InvalidArgument(format!("W_{j} not in the table")))?;
        let mut target = wj.clone();
        if j % 2 == 1 {
            let vj = self
                .v(j)
                .ok_or_else(|| Error::InvalidArgument(format!("V_{j} not in the table")))?;
            target = &target - vj;
        }
        let ks: Vec<usize> = self.v.keys().copied().filter(|&k| k < j).collect();
        if ks.last().map_or(j > 3, |&k| k + 2 < j) {
            return Err(Error::InvalidArgument(format!("reduced constants below {j} are missing")));
        }
        let gens: Vec<MultiPoly> = ks.iter().map(|k| self.v[k].clone()).collect();
        let weights = self.ring.family_weights().expect("family ring");
        Ok(lift_quasi_homogeneous(&target, &gens, &weights)?
            .map(|qs| ks.into_iter().zip(qs).collect()))
    }
}

fn w_table(family: &MapFamily) -> BTreeMap<usize, MultiPoly> {
    let ff = family.self_composition();
    (3..=family.order()).map(|j| (j, ff.coeff(j))).collect()
}

/// `W_3, ..., W_{d^2}` for the degree-`d` family.
pub fn stability_constants(d: usize) -> Result<ConstantsTable> {
    stability_constants_to(d, d * d)
}

/// `W_3, ..., W_order` for the degree-`d` family.
pub fn stability_constants_to(d: usize, order: usize) -> Result<ConstantsTable> {
    let family = MapFamily::with_order(d, order)?;
    Ok(ConstantsTable {
        d,
        order,
        ring: family.ring().clone(),
        w: w_table(&family),
        v: BTreeMap::new(),
        even_nf: BTreeMap::new(),
    })
}

/// Incremental computation of reduced constants.
///
/// Every ideal involved is quasi-homogeneous for the weights `a_i -> i-1`,
/// so `V_k` needs the basis of `<W_3..W_{k-1}>` only up to weight `k-1`.
#[derive(Clone, Debug)]
pub struct Reducer {
    table: ConstantsTable,
    engine: Engine,
    next: usize,
}

impl Reducer {
    pub fn new(table: &ConstantsTable) -> Self {
        let mut table = table.clone();
        table.v.clear();
        table.even_nf.clear();
        if let Some(w3) = table.w.get(&3) {
            table.v.insert(3, w3.clone());
        }
        let weights = table.ring.family_weights().expect("family ring");
        let engine = Engine::new(&table.ring, Some(weights));
        Reducer { table, engine, next: 4 }
    }

    pub fn table(&self) -> &ConstantsTable {
        &self.table
    }

    pub fn into_table(self) -> ConstantsTable {
        self.table
    }

    /// Compute `V_k` (odd) and even normal forms for all `k <= kmax`.
    pub fn extend_to(&mut self, kmax: usize, budget: &Budget) -> Result<()> {
        if kmax > self.table.order {
            return Err(Error::Truncation { needed: kmax, available: self.table.order });
        }
        while self.next <= kmax {
            let k = self.next;
            self.engine.add_generators(std::slice::from_ref(&self.table.w[&(k - 1)]))?;
            self.engine.run(Some(k as u64 - 1), budget)?;
            let nf = self.engine.reduce_full(&self.table.w[&k], budget)?;
            if k % 2 == 1 {
                self.table.v.insert(k, nf);
            } else {
                self.table.even_nf.insert(k, nf);
            }
            self.next += 1;
        }
        Ok(())
    }
}

/// Add `V_k` for odd `k <= kmax` (and the even normal forms) to `table`.
pub fn reduced_constants(table: &ConstantsTable, kmax: usize, budget: &Budget) -> Result<ConstantsTable> {
    let mut r = Reducer::new(table);
    r.extend_to(kmax, budget)?;
    Ok(r.into_table())
}

/// Reduced constants for degree `d` through `kmax`, computed in the
/// `a_2..a_d` ring.
pub fn constants_table(d: usize, kmax: usize, budget: &Budget) -> Result<ConstantsTable> {
    let t = stability_constants_to(d, kmax.max(3))?;
    reduced_constants(&t, kmax, budget)
}

static GENERIC: Mutex<Option<Arc<ConstantsTable>>> = Mutex::new(None);

/// Generic table: ring `a_2..a_kmax`, so each `V_k` keeps its `-2 a_k` term.
/// The largest table computed so far is cached and reused.
pub fn generic_constants(kmax: usize, budget: &Budget) -> Result<Arc<ConstantsTable>> {
    if let Some(t) = GENERIC.lock().expect("cache").as_ref() {
        if t.kmax().unwrap_or(0) >= kmax && t.order >= kmax {
            return Ok(t.clone());
        }
    }
    let t = Arc::new(constants_table(kmax, kmax, budget)?);
    let mut guard = GENERIC.lock().expect("cache");
    let replace = guard.as_ref().is_none_or(|old| old.kmax() < t.kmax());
    if replace {
        *guard = Some(t.clone());
    }
    Ok(t)
}

/// Generic `V_k` (odd `k <= kmax`) with `a_j = 0` for `j > d`, in ring
/// `a_2..a_d`.
pub fn generic_reduced(d: usize, kmax: usize, budget: &Budget) -> Result<BTreeMap<usize, MultiPoly>> {
    let t = generic_constants(kmax.max(d).max(3), budget)?;
    let ring = Ring::a_family(d);
    Ok(t
        .vs()
        .iter()
        .filter(|(k, _)| **k <= kmax)
        .map(|(k, p)| (*k, p.restrict(&ring)))
        .collect())
}

/// True iff every monomial of `p` has weighted degree `j - 1` under the
/// weights `a_i -> i - 1`.
pub fn quasi_weight_check(p: &MultiPoly, j: usize) -> bool {
    match p.ring().family_weights() {
        Some(w) => j >= 1 && p.is_quasi_homogeneous(&w, j as u64 - 1),
        None => false,
    }
}

/// First non-vanishing reduced constant at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakPoint {
    /// Weak-point order `m - 1`.
    pub order: usize,
    /// Index `2m + 1` of the first non-vanishing constant.
    pub index: usize,
    pub value: QuadExt,
}

/// Evaluate `V_3, V_5, ...` at `point` (values for `a_2..a_d`) until one is
/// nonzero. Constants up to `V_kmax` are used (default `2d - 1`).
pub fn weak_point_order(
    point: &[QuadExt],
    d: usize,
    kmax: Option<usize>,
    budget: &Budget,
) -> Result<WeakPoint> {
    if point.len() + 1 != d {
        return Err(Error::InvalidArgument(format!(
            "degree {d} needs {} coordinates, got {}",
            d - 1,
            point.len()
        )));
    }
    common_radicand(point)?;
    let kmax = kmax.unwrap_or(2 * d - 1);
    let vs = generic_reduced(d, kmax, budget)?;
    for (k, v) in &vs {
        let value = v.eval(point);
        if !value.is_zero() {
            return Ok(WeakPoint { order: (k - 3) / 2, index: *k, value });
        }
    }
    Err(Error::Inconclusive(format!(
        "all reduced constants up to V_{kmax} vanish at the point (possibly the involution f(x) = -x)"
    )))
}

/// Text rendering: one `V_k = ...` line per reduced constant.
pub fn render_reduced(table: &ConstantsTable) -> String {
    let mut s = String::new();
    for (k, v) in table.vs() {
        s.push_str(&format!("V_{k} = {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_poly;

    #[test]
    fn degree_two_expansion() {
        let t = stability_constants(2).unwrap();
        let r = t.ring().clone();
        assert_eq!(t.w(3).unwrap(), &parse_poly(&r, "-2*a2^2").unwrap());
        assert_eq!(t.w(4).unwrap(), &parse_poly(&r, "a2^3").unwrap());
        assert_eq!(t.ws().len(), 2);
    }

    #[test]
    fn low_order_reduced_constants() {
        let t = constants_table(7, 7, &Budget::unlimited()).unwrap();
        let r = t.ring().clone();
        assert_eq!(t.v(3).unwrap(), &parse_poly(&r, "-2*a2^2 - 2*a3").unwrap());
        assert_eq!(t.v(5).unwrap(), &parse_poly(&r, "-6*a4*a2 + 4*a3^2 - 2*a5").unwrap());
        assert_eq!(
            t.v(7).unwrap(),
            &parse_poly(&r, "3*a2*a3*a4 - 8*a6*a2 + 13*a3*a5 - 4*a4^2 - 2*a7").unwrap()
        );
        assert!(t.even_normal_forms().values().all(MultiPoly::is_zero));
    }

    #[test]
    fn weight_check() {
        let t = stability_constants_to(5, 9).unwrap();
        for (j, w) in t.ws() {
            assert!(quasi_weight_check(w, *j), "W_{j}");
        }
        let r = Ring::a_family(3);
        assert!(!quasi_weight_check(&parse_poly(&r, "a2 + a3").unwrap(), 3));
    }
}
