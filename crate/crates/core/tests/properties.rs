mod common;

use liftkit::factorize::peel_step;
use liftkit::sampling;
use liftkit::structures::{cascade_in_structure, FilterGroupSpec};
use liftkit::*;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=12, -6i64..=6, 1i64..=6)
        .prop_map(|(a, b, c, d)| &Scalar::ratio(a, b) + &(&Scalar::ratio(c, d) * &Scalar::sqrt2()))
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn dyadic() -> impl Strategy<Value = Scalar> {
    (-40i64..=40, 0u32..=5).prop_map(|(a, e)| Scalar::ratio(a, 1 << e))
}

fn poly_with(c: impl Strategy<Value = Scalar>) -> impl Strategy<Value = LaurentPoly> {
    (-3i64..=3, prop::collection::vec(c, 0..=5)).prop_map(|(lo, cs)| LaurentPoly::new(lo, cs))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    poly_with(scalar())
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn matrix() -> impl Strategy<Value = PolyMatrix> {
    (poly(), poly(), poly(), poly()).prop_map(|(a, b, c, d)| PolyMatrix::new(a, b, c, d))
}

fn wa() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(scalar(), 1..=3).prop_map(|half| {
        let h = half.len() as i64;
        let mut c = half.clone();
        c.push(Scalar::zero());
        c.extend(half.into_iter().rev().map(|v| -v));
        LaurentPoly::new(-h, c)
    })
}

fn structure_cascade(s: GroupLiftingStructure) -> impl Strategy<Value = Cascade> {
    any::<u64>().prop_map(move |seed| sampling::cascade(&mut sampling::rng(seed), &s, 4, 4))
}

fn unimodular() -> impl Strategy<Value = PolyMatrix> {
    any::<u64>().prop_map(|seed| {
        let c = sampling::cascade(&mut sampling::rng(seed), &GroupLiftingStructure::hs(), 3, 4);
        Cascade { gain: GainScale::one(), ..c }.product()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        // Oracle route for the product.
        prop_assert_eq!(common::Q2::from_lib(&(&a * &b)), common::Q2::from_lib(&a).mul(&common::Q2::from_lib(&b)));
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn laurent_ring_laws(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(common::P::from_lib(&(&f * &g)), common::P::from_lib(&f).mul(&common::P::from_lib(&g)));
    }

    #[test]
    fn time_reverse_is_a_ring_automorphism(f in poly(), g in poly()) {
        prop_assert_eq!((&f * &g).time_reverse(), &f.time_reverse() * &g.time_reverse());
        prop_assert_eq!((&f + &g).time_reverse(), &f.time_reverse() + &g.time_reverse());
        prop_assert_eq!(f.time_reverse().time_reverse(), f);
    }

    #[test]
    fn wa_filters_vanish_at_plus_minus_one(s in wa()) {
        prop_assert!(s.has_symmetry(Symmetry::Wa));
        prop_assert!(s.evaluate(&Scalar::one()).unwrap().is_zero());
        prop_assert!(s.evaluate(&Scalar::from_int(-1)).unwrap().is_zero());
    }

    #[test]
    fn order_is_additive(f in nonzero_poly(), g in nonzero_poly()) {
        prop_assert_eq!((&f * &g).order().unwrap(), f.order().unwrap() + g.order().unwrap());
    }

    #[test]
    fn dyadic_polynomials_are_closed(f in poly_with(dyadic()), g in poly_with(dyadic())) {
        prop_assert!((&f + &g).is_dyadic());
        prop_assert!((&f * &g).is_dyadic());
    }

    #[test]
    fn det_is_multiplicative(a in matrix(), b in matrix()) {
        prop_assert_eq!((&a * &b).det(), &a.det() * &b.det());
    }

    #[test]
    fn matrix_product_matches_oracle(a in matrix(), b in matrix()) {
        prop_assert_eq!(
            common::mat_from_lib(&(&a * &b)),
            common::mat_mul(&common::mat_from_lib(&a), &common::mat_from_lib(&b))
        );
    }

    #[test]
    fn order_is_subadditive(a in matrix(), b in matrix()) {
        let ab = &a * &b;
        if let (Ok(x), Ok(y), Ok(z)) = (a.order(), b.order(), ab.order()) {
            prop_assert!(z <= x + y);
        }
    }

    #[test]
    fn filters_round_trip(m in matrix()) {
        prop_assert_eq!(PolyMatrix::from_filters(&m.to_filters()), m);
    }

    #[test]
    fn gamma_is_an_automorphism(a in matrix(), b in matrix(), k in nonzero_scalar()) {
        prop_assert_eq!(gamma(&k, &(&a * &b)).unwrap(), &gamma(&k, &a).unwrap() * &gamma(&k, &b).unwrap());
        let d = gain_matrix(&k).unwrap();
        prop_assert_eq!(&d * &a, &gamma(&k, &a).unwrap() * &d);
        prop_assert_eq!(gamma(&k.inv().unwrap(), &gamma(&k, &a).unwrap()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fir_pr_is_closed_and_invertible(a in unimodular(), b in unimodular(), k in nonzero_scalar(), n in -3i64..=3) {
        let mono = PolyMatrix::diag(LaurentPoly::one(), LaurentPoly::monomial(k, n));
        let x = &a * &mono;
        prop_assert!(x.is_fir_pr());
        let y = &x * &b;
        prop_assert!(y.is_fir_pr());
        prop_assert_eq!(&y * &y.inverse().unwrap(), PolyMatrix::identity());
    }

    #[test]
    fn ws_group_is_closed(c1 in structure_cascade(GroupLiftingStructure::ws()), c2 in structure_cascade(GroupLiftingStructure::ws())) {
        let (a, b) = (c1.product(), c2.product());
        prop_assert!(a.is_ws() && b.is_ws());
        prop_assert!((&a * &b).is_ws());
        prop_assert!(a.inverse().unwrap().is_ws());
    }

    #[test]
    fn reduce_is_idempotent_and_keeps_product(seed in any::<u64>()) {
        let mut rng = sampling::rng(seed);
        let g = FilterGroupSpec::new(Symmetry::Unconstrained, Ring::Field);
        let n = (seed % 7) as usize;
        let steps: Vec<LiftingStep> = (0..n)
            .map(|i| {
                let m = if (seed >> i) & 1 == 0 { Update::Lowpass } else { Update::Highpass };
                let s = if (seed >> (i + 8)) % 5 == 0 { LaurentPoly::zero() } else { sampling::filter(&mut rng, &g, 3) };
                LiftingStep::new(m, s)
            })
            .collect();
        let c = Cascade::from_steps(steps);
        let r = c.reduce_to_irreducible();
        prop_assert!(r.is_irreducible());
        prop_assert_eq!(r.product(), c.product());
        prop_assert_eq!(r.reduce_to_irreducible(), r);
    }

    #[test]
    fn equivalence_is_an_equivalence_relation(c in structure_cascade(GroupLiftingStructure::ws()), a in nonzero_scalar(), b in nonzero_scalar()) {
        let ca = c.rescale(&a).unwrap();
        let cab = ca.rescale(&b).unwrap();
        prop_assert_eq!(equivalent_mod_rescaling(&c, &c).unwrap(), EquivalenceVerdict::Identical);
        let fwd = equivalent_mod_rescaling(&c, &ca).unwrap().alpha().unwrap();
        let back = equivalent_mod_rescaling(&ca, &c).unwrap().alpha().unwrap();
        prop_assert!((&fwd * &back).is_one());
        let trans = equivalent_mod_rescaling(&c, &cab).unwrap().alpha().unwrap();
        prop_assert_eq!(trans, &a * &b);
    }

    #[test]
    fn factor_gain_expands_diagonal(k in nonzero_scalar()) {
        let steps = factor_gain(&k).unwrap();
        prop_assert_eq!(steps.len(), if k.is_one() { 0 } else { 4 });
        prop_assert_eq!(Cascade::from_steps(steps).product(), gain_matrix(&k).unwrap());
    }

    #[test]
    fn peel_strictly_decreases_order(c in structure_cascade(GroupLiftingStructure::ws())) {
        let s = GroupLiftingStructure::ws();
        let e = Cascade { gain: GainScale::one(), ..c.clone() }.product();
        let last = c.steps.last().unwrap();
        let rep = peel_step(&e, last.m, s.group_for(last.m)).unwrap();
        prop_assert!(rep.order_after < rep.order_before);
        prop_assert_eq!(&rep.step.matrix() * &rep.remainder, e.clone());
        prop_assert_eq!(&rep.step, last);
        // The other characteristic never makes progress on an order-increasing product.
        let other = last.m.opposite();
        prop_assert!(peel_step(&e, other, s.group_for(other)).is_err());
    }

    #[test]
    fn ws_round_trip(c in structure_cascade(GroupLiftingStructure::ws())) {
        let s = GroupLiftingStructure::ws();
        let f = factor_in_structure(&c.product(), &s).unwrap();
        prop_assert!(cascade_in_structure(&f, &s));
        prop_assert!(is_order_increasing(&f).unwrap().holds());
        prop_assert_eq!(equivalent_mod_rescaling(&c, &f).unwrap(), EquivalenceVerdict::Identical);
    }

    #[test]
    fn reversible_ws_round_trip_is_exact(c in structure_cascade(GroupLiftingStructure::ws_reversible())) {
        let f = factor_in_structure(&c.product(), &GroupLiftingStructure::ws_reversible()).unwrap();
        prop_assert_eq!(f, c);
    }

    #[test]
    fn hs_round_trips(seed in any::<u64>()) {
        for s in [GroupLiftingStructure::hs(), GroupLiftingStructure::hs_reversible(), GroupLiftingStructure::elasf()] {
            let c = sampling::cascade(&mut sampling::rng(seed), &s, 3, 3);
            let f = factor_in_structure(&c.product(), &s).unwrap();
            prop_assert!(equivalent_mod_rescaling(&c, &f).unwrap().is_equivalent());
        }
    }

    #[test]
    fn generic_factorization_reproduces_product(m in unimodular()) {
        let c = factor_generic(&m).unwrap();
        prop_assert!(c.is_irreducible());
        prop_assert_eq!(c.base.clone(), PolyMatrix::identity());
        prop_assert_eq!(c.product(), m);
    }
}

#[test]
fn hs_is_not_closed_under_products() {
    let h = PolyMatrix::haar();
    assert!(h.is_hs());
    assert!(!(&h * &h).is_hs());
}
