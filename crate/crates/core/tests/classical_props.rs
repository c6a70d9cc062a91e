mod common;

use common::{rng, Rewrite};
use knotcalc::classical::{conway_a2, linking_matrix, v2, v3, GaussDiagram};
use knotcalc::diagram::{connected_sum, mirror, slice_to_pd, SliceWord};
use knotcalc::moves::{clasp_pass, crossing_change, delta_move};
use proptest::prelude::*;

fn gauss(s: &SliceWord) -> GaussDiagram {
    GaussDiagram::from_slice(s).unwrap()
}

fn random_link(seed: u64, max_cross: usize) -> SliceWord {
    let mut r = rng(seed);
    loop {
        let s = common::random_closed(&mut r, max_cross, 6);
        if s.n_components() >= 2 {
            return s;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn v2_matches_conway(seed in any::<u64>()) {
        let k = common::random_knot(&mut rng(seed), 10, 6);
        prop_assert_eq!(v2(&gauss(&k)), conway_a2(&k).unwrap());
    }

    #[test]
    fn v2_v3_survive_rewrites(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = common::random_knot(&mut r, 10, 6);
        let t = common::scramble(&k, &Rewrite::ALL, 8, &mut r);
        let (g, h) = (gauss(&k), gauss(&t));
        prop_assert_eq!(v2(&h), v2(&g));
        prop_assert_eq!(v3(&h), v3(&g));
    }

    #[test]
    fn mirror_symmetry(seed in any::<u64>()) {
        let k = common::random_knot(&mut rng(seed), 12, 6);
        let (g, m) = (gauss(&k), gauss(&mirror(&k)));
        prop_assert_eq!(v2(&m), v2(&g));
        prop_assert_eq!(v3(&m), -v3(&g));
    }

    #[test]
    fn additive_under_connected_sum(a in any::<u64>(), b in any::<u64>()) {
        let ka = common::random_knot(&mut rng(a), 8, 6);
        let kb = common::random_knot(&mut rng(b), 8, 6);
        let sum = gauss(&connected_sum(&ka, &kb, 0, 0).unwrap());
        prop_assert_eq!(v2(&sum), v2(&gauss(&ka)) + v2(&gauss(&kb)));
        prop_assert_eq!(v3(&sum), v3(&gauss(&ka)) + v3(&gauss(&kb)));
    }

    #[test]
    fn linking_survives_framed_rewrites(seed in any::<u64>()) {
        let mut r = rng(seed);
        let l = random_link(seed, 10);
        let t = common::scramble(&l, &Rewrite::FRAMED, 6, &mut r);
        prop_assert_eq!(linking_matrix(&slice_to_pd(&t).unwrap()), linking_matrix(&slice_to_pd(&l).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn delta_keeps_linking(seed in any::<u64>()) {
        let mut r = rng(seed);
        let l = random_link(seed, 8);
        let Some(site) = common::random_site(&mut r, &l, 3) else { return Ok(()) };
        let moved = delta_move(&l, &site).unwrap();
        prop_assert_eq!(linking_matrix(&slice_to_pd(&moved).unwrap()), linking_matrix(&slice_to_pd(&l).unwrap()));
    }

    #[test]
    fn clasp_pass_keeps_v2(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = common::random_knot(&mut r, 8, 6);
        let Some(site) = common::random_site(&mut r, &k, 4) else { return Ok(()) };
        prop_assert_eq!(v2(&gauss(&clasp_pass(&k, &site).unwrap())), v2(&gauss(&k)));
    }

    #[test]
    fn crossing_change_moves_linking_by_one(seed in any::<u64>()) {
        let l = random_link(seed, 8);
        let tr = l.trace();
        let before = linking_matrix(&slice_to_pd(&l).unwrap());
        for (t, e) in l.events().iter().enumerate().filter(|(_, e)| e.is_crossing()) {
            let (a, b) = tr.event_components(t, e);
            let after = linking_matrix(&slice_to_pd(&crossing_change(&l, t).unwrap()).unwrap());
            for i in 0..before.len() {
                for j in 0..before.len() {
                    let d = (after[i][j] - before[i][j]).abs();
                    let touched = i != j && ((i, j) == (a, b) || (j, i) == (a, b));
                    prop_assert_eq!(d, touched as i64);
                }
            }
        }
    }
}

#[test]
fn crossing_change_can_change_v2() {
    let trefoil = common::braid(2, &[1, 1, 1]);
    let idx = trefoil.events().iter().position(|e| e.is_crossing()).unwrap();
    assert_ne!(v2(&gauss(&crossing_change(&trefoil, idx).unwrap())), v2(&gauss(&trefoil)));
}
