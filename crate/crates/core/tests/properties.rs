use koszulsg::gluing::{simple_glue, tangent_cone_of_gluing};
use koszulsg::groebner::monomials_of_degree;
use koszulsg::tangent_cone::{quadratic_prefilter, tangent_cone_contains, TangentCone};
use koszulsg::toric::{toric_ideal, vanishes_on_curve};
use koszulsg::{Field, NumericalSemigroup};
use proptest::prelude::*;

fn semigroup() -> impl Strategy<Value = NumericalSemigroup> {
    prop::collection::vec(3u64..28, 2..5).prop_filter_map("not a numerical semigroup", |g| NumericalSemigroup::new(&g).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hilbert_function_matches_orders(h in semigroup()) {
        let tc = TangentCone::new(&h).unwrap();
        for d in 0..=h.hilbert_stabilization() as u64 + 2 {
            prop_assert_eq!(tc.ideal().hilbert_function(d).unwrap(), h.gr_hilbert_function(d as usize));
        }
    }

    #[test]
    fn toric_basis_vanishes(h in semigroup()) {
        let toric = toric_ideal(&h);
        for g in toric.groebner_basis().iter() {
            prop_assert!(vanishes_on_curve(toric.ring().field(), g, h.generators()));
        }
    }

    #[test]
    fn membership_agrees_with_groebner_reduction(
        h in semigroup(),
        d in 1u32..4,
        picks in prop::collection::vec((any::<prop::sample::Index>(), 1i64..50), 1..6),
    ) {
        let tc = TangentCone::new(&h).unwrap();
        let ring = tc.ideal().ring().clone();
        let field = *ring.field();
        let monomials = monomials_of_degree(h.embedding_dimension(), d);
        let f = ring.from_terms(
            picks.iter().map(|(i, c)| (i.get(&monomials).clone(), field.from_i64(*c))).collect(),
        );
        prop_assert_eq!(tc.ideal().contains(&f), tangent_cone_contains(&h, &f, &field));
        // multiples of generators are always members
        for g in tc.minimal_generators() {
            let (i, c) = &picks[0];
            let m = ring.from_terms(vec![(i.get(&monomials).clone(), field.from_i64(*c))]);
            prop_assert!(tangent_cone_contains(&h, &ring.mul(&m, g), &field));
        }
    }

    #[test]
    fn prefilter_never_rejects_quadratic(h in semigroup()) {
        let tc = TangentCone::new(&h).unwrap();
        if quadratic_prefilter(&h).is_some() {
            prop_assert!(!tc.is_quadratic());
        }
        if tc.is_quadratic() {
            prop_assert_eq!(tc.toric_mu(), tc.mu());
        }
    }

    #[test]
    fn gluing_by_two_doubles_multiplicity(h in semigroup(), k in 0usize..40) {
        let candidates: Vec<u64> = (h.max_generator()..h.max_generator() + 40)
            .filter(|&x| x % 2 == 1 && h.contains(x as i64) && !h.generators().contains(&x))
            .collect();
        prop_assume!(!candidates.is_empty());
        let ell = candidates[k % candidates.len()];
        let glued = simple_glue(&h, 2, ell).unwrap();
        prop_assert_eq!(glued.embedding_dimension(), h.embedding_dimension() + 1);
        let formula = tangent_cone_of_gluing(&h, 2, ell).unwrap();
        let direct = TangentCone::new(&glued).unwrap();
        prop_assert!(formula.ideal.equals(direct.ideal()));
        if TangentCone::new(&h).unwrap().is_quadratic() {
            prop_assert!(direct.is_quadratic());
            prop_assert_eq!(glued.multiplicity(), 2 * h.multiplicity());
        }
    }
}
