//! Property tests over random inputs.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::{One, Zero};
use proptest::prelude::*;

use cyclicity::ideals::{groebner_with, GbOptions, GroebnerBasis, Weighting};
use cyclicity::polyalg::rat::{int, rat, rat_to_f64};
use cyclicity::polyalg::{grevlex_cmp, Monomial, MultiPoly, QuadExt, Rat, Ring, TruncSeries};
use cyclicity::realroots::{resultant, UniPoly};
use cyclicity::stability::{generic_reduced, quasi_weight_check, stability_constants_to};
use cyclicity::Budget;

fn exps(n: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..4, n)
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn unipoly(max_deg: usize) -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-6i64..=6, 2..=max_deg + 1).prop_map(|mut c| {
        let last = c.len() - 1;
        if c[last] == 0 {
            c[last] = 1;
        }
        UniPoly::from_ints(&c)
    })
}

fn series_ring() -> Arc<Ring> {
    Ring::new(vec!["c"]).unwrap()
}

/// Series with rational coefficients; `unit` makes the linear term 1.
fn series(order: usize, unit: bool) -> impl Strategy<Value = TruncSeries> {
    prop::collection::vec(small_rat(), order).prop_map(move |mut cs| {
        if unit {
            cs[0] = int(1);
        }
        let r = series_ring();
        TruncSeries::from_terms(&r, order, cs.into_iter().enumerate().map(|(i, c)| (i + 1, MultiPoly::constant(&r, c))))
            .unwrap()
    })
}

fn family_basis() -> &'static (Vec<MultiPoly>, GroebnerBasis) {
    static CELL: std::sync::OnceLock<(Vec<MultiPoly>, GroebnerBasis)> = std::sync::OnceLock::new();
    CELL.get_or_init(|| {
        let vs: Vec<MultiPoly> = generic_reduced(5, 7, &Budget::unlimited()).unwrap().into_values().collect();
        let gb = groebner_with(&vs, &GbOptions { weighting: Weighting::Auto, ..Default::default() }).unwrap();
        (vs, gb)
    })
}

fn family_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((exps(4), -5i64..=5), 1..6).prop_map(|terms| {
        let r = Ring::a_family(5);
        MultiPoly::from_terms(&r, terms.into_iter().map(|(e, c)| (Monomial::from_exps(&e), int(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn grevlex_is_a_monomial_order(a in exps(4), b in exps(4), c in exps(4)) {
        let (ma, mb, mc) = (Monomial::from_exps(&a), Monomial::from_exps(&b), Monomial::from_exps(&c));
        prop_assert_eq!(grevlex_cmp(&ma, &mb), grevlex_cmp(&mb, &ma).reverse());
        prop_assert_eq!(grevlex_cmp(&ma, &mb) == Ordering::Equal, a == b);
        // compatible with multiplication
        prop_assert_eq!(grevlex_cmp(&ma.mul(&mc), &mb.mul(&mc)), grevlex_cmp(&ma, &mb));
        if grevlex_cmp(&ma, &mb) == Ordering::Less && grevlex_cmp(&mb, &mc) == Ordering::Less {
            prop_assert_eq!(grevlex_cmp(&ma, &mc), Ordering::Less);
        }
        prop_assert_ne!(grevlex_cmp(&ma.mul(&Monomial::var(0)), &ma), Ordering::Less);
    }

    #[test]
    fn series_composition_is_associative(f in series(6, false), g in series(6, false), h in series(6, false)) {
        let left = f.compose(&g, 6).unwrap().compose(&h, 6).unwrap();
        let right = f.compose(&g.compose(&h, 6).unwrap(), 6).unwrap();
        prop_assert_eq!(left.coeffs(), right.coeffs());
    }

    #[test]
    fn series_reversion_inverts(f in series(7, true)) {
        let inv = f.reverse(7).unwrap();
        let id = TruncSeries::identity(&series_ring(), 7);
        let (right, left) = (f.compose(&inv, 7).unwrap(), inv.compose(&f, 7).unwrap());
        prop_assert_eq!(right.coeffs(), id.coeffs());
        prop_assert_eq!(left.coeffs(), id.coeffs());
    }

    #[test]
    fn quadratic_sign_matches_float(p in small_rat(), q in small_rat(), d in prop::sample::select(vec![2u64, 3, 5, 7, 55])) {
        let x = QuadExt::new(p.clone(), q.clone(), d).unwrap();
        let f = rat_to_f64(&p) + rat_to_f64(&q) * (d as f64).sqrt();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.signum() as f64, f.signum());
        } else {
            prop_assert_eq!(x.signum(), 0);
        }
        // norm is the product with the conjugate
        let n = x.checked_mul(&x.conjugate()).unwrap();
        prop_assert_eq!(n, QuadExt::rational(x.norm()));
    }

    #[test]
    fn resultant_symmetry_and_multiplicativity(p in unipoly(4), q in unipoly(4), s in unipoly(3)) {
        let (m, n) = (p.degree().unwrap(), q.degree().unwrap());
        let pq = resultant(&p, &q).unwrap();
        let qp = resultant(&q, &p).unwrap();
        let sign = if (m * n) % 2 == 1 { -Rat::one() } else { Rat::one() };
        prop_assert_eq!(&pq, &(qp * sign));
        let ps = UniPoly::new(mul(p.coeffs(), s.coeffs()));
        prop_assert_eq!(resultant(&ps, &q).unwrap(), pq * resultant(&s, &q).unwrap());
    }
}

fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut c = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn normal_form_invariants(p in family_poly(), q in family_poly(), m in exps(4)) {
        let (vs, gb) = family_basis();
        let np = gb.normal_form(&p).unwrap();
        prop_assert_eq!(&gb.normal_form(&np).unwrap(), &np);
        let nq = gb.normal_form(&q).unwrap();
        prop_assert_eq!(gb.normal_form(&(&p + &q)).unwrap(), &np + &nq);
        // adding an ideal element does not move the normal form
        let g = vs[0].mul_term(&Monomial::from_exps(&m), &int(3));
        prop_assert_eq!(gb.normal_form(&(&p + &g)).unwrap(), np);
    }

    #[test]
    fn quasi_homogeneous_scaling(a in prop::collection::vec(small_rat(), 5), lambda in small_rat()) {
        prop_assume!(!lambda.is_zero());
        let t = stability_constants_to(6, 11).unwrap();
        let mut scaled = a.clone();
        let mut p = Rat::one();
        for s in scaled.iter_mut() {
            p *= &lambda;
            *s *= &p;
        }
        for (j, w) in t.ws() {
            prop_assert!(quasi_weight_check(w, *j));
            let mut rhs = w.eval(&a);
            for _ in 0..j - 1 {
                rhs *= &lambda;
            }
            prop_assert_eq!(w.eval(&scaled), rhs);
        }
    }

    #[test]
    fn first_nonzero_constant_is_odd(a in prop::collection::vec(small_rat(), 1..=5)) {
        // put the point on W3 = 0 half of the time to reach deeper constants
        let mut a = a;
        if a.len() >= 2 && a[0] > int(0) {
            a[1] = -(&a[0] * &a[0]);
        }
        let d = a.len() + 1;
        let t = stability_constants_to(d, (d * d).min(20)).unwrap();
        if let Some((j, _)) = t.ws().iter().find(|(_, w)| !w.eval(&a).is_zero()) {
            prop_assert_eq!(j % 2, 1, "first nonzero W{} at {:?}", j, a);
        }
    }

    #[test]
    fn embedding_is_consistent(a in prop::collection::vec(small_rat(), 3)) {
        // W_j of the degree-4 family is W_j of a larger family with a_5 = a_6 = 0
        let small = stability_constants_to(4, 11).unwrap();
        let big = stability_constants_to(6, 11).unwrap();
        let mut padded = a.clone();
        padded.extend([Rat::zero(), Rat::zero()]);
        for (j, w) in small.ws() {
            let wb = big.w(*j).unwrap();
            prop_assert_eq!(&wb.restrict(small.ring()), w);
            prop_assert_eq!(wb.eval(&padded), w.eval(&a));
            prop_assert_eq!(&w.embed(big.ring()).unwrap().restrict(small.ring()), w);
        }
    }
}
