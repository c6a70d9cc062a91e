mod common;

use common::{rng, Rewrite};
use knotcalc::classical::{kauffman_bracket, linking_matrix, v2, GaussDiagram};
use knotcalc::diagram::{SliceWord, ThetaTangle};
use knotcalc::moves::{band_sum, ck_model};
use knotcalc::surfaces::{boundary_diagram, boundary_link, canonical_surface, seifert_pairing};
use proptest::prelude::*;

fn canonical_boundary(t: &ThetaTangle) -> SliceWord {
    boundary_diagram(&canonical_surface(t).unwrap()).unwrap()
}

fn boundary_lk(t: &ThetaTangle) -> Vec<Vec<i64>> {
    linking_matrix(&boundary_link(&canonical_surface(t).unwrap()).unwrap())
}

/// v2 of each boundary component, by label.
fn boundary_v2(t: &ThetaTangle) -> Vec<(String, i64)> {
    let b = canonical_boundary(t);
    let mut out: Vec<(String, i64)> = (0..b.n_components())
        .map(|c| {
            let others: Vec<usize> = (0..b.n_components()).filter(|&d| d != c).collect();
            let knot = b.delete_components(&others).unwrap();
            (b.labels()[c].clone(), v2(&GaussDiagram::from_slice(&knot).unwrap()))
        })
        .collect();
    out.sort();
    out
}

/// A C_k band sum on the core, on a tangle wide enough for the site.
fn moved_core(seed: u64, k: usize) -> (ThetaTangle, ThetaTangle) {
    let mut r = rng(seed);
    let core = common::widen(common::random_theta(&mut r, 8).tangle(), k + 1, &mut r);
    let site = common::random_site(&mut r, &core, k + 1).unwrap();
    let moved = band_sum(&core, &ck_model(k).unwrap(), &site).unwrap();
    (ThetaTangle::new(core).unwrap(), ThetaTangle::new(moved).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_pairing_is_zero(seed in any::<u64>()) {
        let t = common::random_theta(&mut rng(seed), 12);
        let s = canonical_surface(&t).unwrap();
        prop_assert!(seifert_pairing(&s).unwrap().is_zero());
        prop_assert_eq!(canonical_boundary(&t).n_components(), 3);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn c2_keeps_boundary_linking(seed in any::<u64>()) {
        let (core, moved) = moved_core(seed, 2);
        prop_assert_eq!(boundary_lk(&moved), boundary_lk(&core));
    }

    #[test]
    fn c3_keeps_boundary_v2(seed in any::<u64>()) {
        let (core, moved) = moved_core(seed, 3);
        prop_assert_eq!(boundary_v2(&moved), boundary_v2(&core));
    }

    #[test]
    fn boundary_bracket_survives_core_rewrites(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = common::random_theta(&mut r, 4);
        let core = common::scramble(t.tangle(), &Rewrite::ALL, 2, &mut r);
        let (a, b) = (canonical_boundary(&t), canonical_boundary(&ThetaTangle::new(core).unwrap()));
        prop_assume!(a.crossing_count().max(b.crossing_count()) <= 14);
        prop_assert_eq!(kauffman_bracket(&a).unwrap(), kauffman_bracket(&b).unwrap());
    }
}
