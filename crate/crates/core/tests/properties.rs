use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;

use homeo_order::enumerate::{canonical_index, canonical_rational};
use homeo_order::order::{OrderingSpec, SignAssignment, StandardOrdering};
use homeo_order::rational::frac;
use homeo_order::witness::theta_in_t;
use homeo_order::{PlHomeo, Rational, Sign};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..9).prop_map(|(n, d)| frac(n, d))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..40, 1i64..9).prop_map(|(n, d)| frac(n, d))
}

fn homeo() -> impl Strategy<Value = PlHomeo> {
    (rational(), rational(), prop::collection::vec((positive(), positive()), 0..6), positive(), positive()).prop_map(
        |(x0, y0, steps, left, right)| {
            let mut breaks = vec![(x0, y0)];
            for (dx, dy) in steps {
                let (x, y) = breaks.last().unwrap().clone();
                breaks.push((x + dx, y + dy));
            }
            PlHomeo::new(breaks, left, right).unwrap()
        },
    )
}

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Positive), Just(Sign::Negative)]
}

fn standard_ordering() -> impl Strategy<Value = StandardOrdering> {
    (prop::collection::btree_set(rational(), 0..5), prop::collection::vec(sign(), 0..8), sign()).prop_map(
        |(prefix, signs, default): (BTreeSet<Rational>, Vec<Sign>, Sign)| {
            let table = SignAssignment::from_list(&signs, default).unwrap();
            StandardOrdering::new(prefix.into_iter().collect(), table).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inverse_cancels(f in homeo()) {
        let inv = f.invert();
        prop_assert!(f.compose(&inv).is_identity());
        prop_assert!(inv.compose(&f).is_identity());
    }

    #[test]
    fn composition_is_associative(f in homeo(), g in homeo(), h in homeo()) {
        prop_assert_eq!(f.compose(&g.compose(&h)), f.compose(&g).compose(&h));
    }

    #[test]
    fn composition_evaluates_pointwise(f in homeo(), g in homeo(), x in rational()) {
        prop_assert_eq!(f.compose(&g).evaluate(&x), f.evaluate(&g.evaluate(&x)));
    }

    #[test]
    fn plus_and_minus_parts_recombine(f in homeo()) {
        let (plus, minus) = (f.plus_part(), f.minus_part());
        prop_assert_eq!(plus.compose(&minus), f.clone());
        prop_assert_eq!(minus.compose(&plus), f.clone());
        prop_assert!(plus.below_set().is_empty());
        prop_assert!(minus.above_set().is_empty());
    }

    #[test]
    fn inverse_swaps_above_and_below(f in homeo()) {
        let inv = f.invert();
        prop_assert_eq!(inv.above_set(), f.below_set());
        prop_assert_eq!(inv.below_set(), f.above_set());
    }

    #[test]
    fn ab_sets_match_pointwise_displacement(f in homeo(), x in rational()) {
        let y = f.evaluate(&x);
        prop_assert_eq!(f.above_set().contains(&x), y > x);
        prop_assert_eq!(f.below_set().contains(&x), y < x);
    }

    #[test]
    fn germ_is_a_homomorphism(f in homeo(), g in homeo()) {
        let lhs = f.compose(&g).germ_at_infinity();
        prop_assert_eq!(lhs, f.germ_at_infinity().compose(&g.germ_at_infinity()));
        prop_assert_eq!(f.invert().germ_at_infinity(), f.germ_at_infinity().inverse());
    }

    #[test]
    fn difference_set_is_support_of_quotient(f in homeo(), g in homeo(), x in rational()) {
        let diff = f.difference_set(&g);
        prop_assert_eq!(diff.clone(), g.invert().compose(&f).support());
        prop_assert_eq!(diff.contains(&x), f.evaluate(&x) != g.evaluate(&x));
    }

    #[test]
    fn standard_orderings_are_left_invariant(ord in standard_ordering(), f in homeo(), g in homeo(), h in homeo()) {
        let base = ord.compare(&f, &g).sign;
        prop_assert_eq!(ord.compare(&h.compose(&f), &h.compose(&g)).sign, base);
        prop_assert_eq!(ord.compare(&g, &f).sign, -base);
        prop_assert_eq!(base.is_zero(), f == g);
    }

    #[test]
    fn standard_ordering_is_determined_by_sign_of_quotient(ord in standard_ordering(), f in homeo(), g in homeo()) {
        prop_assert_eq!(ord.compare(&f, &g).sign, ord.sign(&g.invert().compose(&f)));
    }

    #[test]
    fn ordering_spec_json_round_trip(ord in standard_ordering()) {
        let spec = OrderingSpec::Standard(ord);
        let json = serde_json::to_string(&spec).unwrap();
        let back: OrderingSpec = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, spec);
    }

    #[test]
    fn theta_root_solves_and_theta_decreases(fs in prop::collection::vec(homeo(), 1..4), x in rational(), t in rational()) {
        let plus: Vec<PlHomeo> = fs.iter().map(PlHomeo::plus_part).collect();
        let theta = theta_in_t(&plus, &x).unwrap();
        let root = theta.root();
        prop_assert_eq!(theta.eval(&root), x.clone());
        prop_assert!(root >= Rational::from_integer(0.into()));
        prop_assert_eq!(theta.eval(&t) < x, t > root);
    }

    #[test]
    fn canonical_index_inverts_enumeration(k in 0u64..1_000_000) {
        let k = BigUint::from(k);
        prop_assert_eq!(canonical_index(&canonical_rational(&k)), k);
    }
}
