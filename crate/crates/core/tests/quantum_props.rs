mod common;

use std::sync::OnceLock;

use common::{rng, Rewrite};
use knotcalc::classical::{bracket_to_q, kauffman_bracket};
use knotcalc::diagram::{connected_sum, pretzel, pretzel_vertical, SliceWord};
use knotcalc::moves::parallel_cable;
use knotcalc::quantum::{fundamental_invariant, standard_tableaux, AlgebraSpec, ColorSpec, ColoredRep, QuantumError, ResourceLimits};
use knotcalc::ring::{exact_divide, LaurentPoly};
use proptest::prelude::*;

fn alg(n: usize) -> AlgebraSpec {
    AlgebraSpec::new(n).unwrap()
}

fn fundamental(n: usize) -> &'static ColoredRep {
    static REPS: OnceLock<Vec<ColoredRep>> = OnceLock::new();
    &REPS.get_or_init(|| (2..=4).map(|n| ColoredRep::new(alg(n), ColorSpec::fundamental()).unwrap()).collect())[n - 2]
}

fn framed(s: &SliceWord, n: usize) -> LaurentPoly {
    fundamental(n).evaluate(s, &ResourceLimits::unlimited()).unwrap()
}

fn invariant(s: &SliceWord, n: usize) -> LaurentPoly {
    fundamental_invariant(s, alg(n), &ResourceLimits::unlimited()).unwrap().invariant
}

/// Every colored representation of `r` boxes for sl_2, one per standard
/// tableau; partitions with more than two rows vanish.
fn tableau_reps(r: usize) -> &'static [ColoredRep] {
    static REPS: OnceLock<Vec<Vec<ColoredRep>>> = OnceLock::new();
    let parts: [&[&[usize]]; 2] = [&[&[2], &[1, 1]], &[&[3], &[2, 1], &[1, 1, 1]]];
    &REPS.get_or_init(|| {
        parts
            .iter()
            .map(|ps| {
                ps.iter()
                    .flat_map(|p| standard_tableaux(p).unwrap())
                    .filter_map(|t| match ColoredRep::new(alg(2), ColorSpec::with_tableau(t).unwrap()) {
                        Ok(rep) => Some(rep),
                        Err(QuantumError::ZeroDimension) => None,
                        Err(e) => panic!("{e}"),
                    })
                    .collect()
            })
            .collect()
    })[r - 2]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn invariant_under_rewrites(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let s = common::random_closed(&mut r, 7, 6);
        let t = common::scramble(&s, &Rewrite::ALL, 5, &mut r);
        prop_assert_eq!(invariant(&t, n), invariant(&s, n));
        let f = common::scramble(&s, &Rewrite::FRAMED, 3, &mut r);
        prop_assert_eq!(framed(&f, n), framed(&s, n));
    }

    #[test]
    fn curl_changes_framed_value_by_the_scalar(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let s = common::random_closed(&mut r, 5, 4);
        let t = common::apply(&s, Rewrite::Curl, &mut r).unwrap();
        let curl = fundamental(n).curl_scalar().unwrap();
        let (a, b) = (framed(&s, n), framed(&t, n));
        match t.writhe() - s.writhe() {
            1 => prop_assert_eq!(b, a * curl),
            -1 => prop_assert_eq!(b * curl, a),
            d => prop_assert!(false, "writhe changed by {}", d),
        }
    }

    #[test]
    fn sl2_matches_bracket(seed in any::<u64>()) {
        let s = common::random_closed(&mut rng(seed), 10, 6);
        let expected = bracket_to_q(&kauffman_bracket(&s).unwrap(), 1).unwrap() * LaurentPoly::parse("q + q^-1").unwrap();
        prop_assert_eq!(invariant(&s, 2), expected);
    }

    #[test]
    fn connected_sum_is_multiplicative(seed in any::<u64>(), n in 2usize..=3) {
        let mut r = rng(seed);
        let a = common::random_knot(&mut r, 5, 4);
        let b = common::random_knot(&mut r, 5, 4);
        let sum = connected_sum(&a, &b, 0, 0).unwrap();
        let dim = fundamental(n).quantum_dimension().unwrap();
        prop_assert_eq!(invariant(&sum, n) * dim, invariant(&a, n) * invariant(&b, n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn slicing_independence(params in prop::collection::vec((-3i64..=3).prop_filter("nonzero", |p| *p != 0), 1..=3), n in 2usize..=3) {
        prop_assert_eq!(invariant(&pretzel(&params), n), invariant(&pretzel_vertical(&params), n));
    }

    #[test]
    fn cable_splits_over_idempotents(seed in any::<u64>(), r in 2usize..=3) {
        let k = common::random_knot(&mut rng(seed), 4, 4);
        let lim = ResourceLimits::unlimited();
        let cabled = framed(&parallel_cable(&k, r), 2);
        let parts: LaurentPoly = tableau_reps(r).iter().map(|rep| rep.evaluate(&k, &lim).unwrap()).sum();
        prop_assert_eq!(cabled, parts);
    }
}

#[test]
fn normalized_difference_is_exact_for_mutants() {
    let kg = pretzel(&[3, 3, -3, -2]);
    let kh = pretzel(&[3, -3, 3, -2]);
    let d = &invariant(&kg, 2) - &invariant(&kh, 2);
    assert!(d.is_zero());
    assert!(exact_divide(&invariant(&kg, 3), &fundamental(3).quantum_dimension().unwrap()).is_ok());
}

#[test]
fn tableaux_of_one_shape_agree() {
    let k = pretzel(&[1, 1, 1]);
    let values: Vec<LaurentPoly> = standard_tableaux(&[2, 1])
        .unwrap()
        .into_iter()
        .map(|t| ColoredRep::new(alg(3), ColorSpec::with_tableau(t).unwrap()).unwrap().evaluate(&k, &ResourceLimits::unlimited()).unwrap())
        .collect();
    assert_eq!(values.len(), 2);
    assert_eq!(values[0], values[1]);
}
