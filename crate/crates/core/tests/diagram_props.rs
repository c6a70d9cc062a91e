mod common;

use common::{rng, Rewrite};
use knotcalc::classical::kauffman_bracket;
use knotcalc::diagram::{mirror, pretzel, pretzel_vertical, slice_to_pd, vertex_sum, BraidWord, Event, ThetaTangle};
use proptest::prelude::*;

fn pure_braid(squares: &[i32]) -> BraidWord {
    BraidWord::new(3, squares.iter().flat_map(|&g| [g, g]).collect()).unwrap()
}

fn square_gens() -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(prop_oneof![Just(1), Just(2), Just(-1), Just(-2)], 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pd_round_trip(seed in any::<u64>()) {
        let s = common::random_closed(&mut rng(seed), 20, 8);
        let d = slice_to_pd(&s).unwrap();
        prop_assert_eq!(d.crossings().len(), s.crossing_count());
        prop_assert_eq!(d.writhe(), s.writhe());
        prop_assert_eq!(d.n_components(), s.n_components());
        prop_assert_eq!(d.labels(), s.labels());
        let mut from_pd: Vec<i64> = d.crossings().iter().map(|c| c.sign.value()).collect();
        let mut from_slice: Vec<i64> = s.events().iter().filter_map(|e| match e {
            Event::Cross { sign, .. } => Some(sign.value()),
            _ => None,
        }).collect();
        from_pd.sort();
        from_slice.sort();
        prop_assert_eq!(from_pd, from_slice);
    }

    #[test]
    fn mirror_is_an_involution(seed in any::<u64>()) {
        let s = common::random_closed(&mut rng(seed), 12, 8);
        prop_assert_eq!(mirror(&mirror(&s)), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn planar_rewrites_keep_the_bracket(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = common::random_closed(&mut r, 9, 6);
        let t = common::scramble(&s, &Rewrite::PLANAR, 6, &mut r);
        prop_assert_eq!(kauffman_bracket(&t).unwrap(), kauffman_bracket(&s).unwrap());
        prop_assert_eq!(t.writhe(), s.writhe());
    }

    #[test]
    fn vertex_sum_is_associative(a in square_gens(), b in square_gens(), c in square_gens()) {
        let [ta, tb, tc] = [&a, &b, &c].map(|g| ThetaTangle::from_braid(&pure_braid(g)).unwrap());
        let left = vertex_sum(&vertex_sum(&ta, &tb).unwrap(), &tc).unwrap();
        let right = vertex_sum(&ta, &vertex_sum(&tb, &tc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

fn expected_components(params: &[i64]) -> usize {
    match params.iter().filter(|p| *p % 2 == 0).count() {
        0 if params.len() % 2 == 1 => 1,
        0 => 2,
        e => e,
    }
}

proptest! {
    #[test]
    fn pretzel_components(params in prop::collection::vec((-5i64..=5).prop_filter("nonzero", |p| *p != 0), 1..=6)) {
        let s = pretzel(&params);
        prop_assert_eq!(s.n_components(), expected_components(&params));
        prop_assert_eq!(pretzel_vertical(&params).n_components(), s.n_components());
    }
}
