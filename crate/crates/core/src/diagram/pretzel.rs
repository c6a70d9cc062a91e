use super::{GeoEvent, GeoWord, Orient, Over, SliceWord};

// Crossing geometry used for a positive (right-handed) half twist in each
// construction; fixed so that P(1,1,1) is the positive trefoil.
const SIDEWAYS_POSITIVE: Over = Over::Left;
const VERTICAL_POSITIVE: Over = Over::Left;

fn twist_over(p: i64, positive: Over) -> Over {
    if p > 0 {
        positive
    } else {
        positive.flip()
    }
}

/// Pretzel link P(p1, ..., pn): tassel `j` carries `|pj|` half twists,
/// right-handed for positive `pj`. The diagram is swept from left to right,
/// so it never holds more than six strands.
pub fn pretzel(params: &[i64]) -> SliceWord {
    assert!(!params.is_empty(), "pretzel needs at least one tassel");
    use GeoEvent::*;
    let mut ev = vec![Cup { pos: 0, left: Orient::Down }, Cup { pos: 2, left: Orient::Down }];
    for &p in params {
        // vertical twist region between the two middle strands
        ev.push(Cup { pos: 3, left: Orient::Down });
        for _ in 0..p.unsigned_abs() {
            ev.push(Cross { pos: 2, over: twist_over(p, SIDEWAYS_POSITIVE) });
        }
        ev.push(Cap { pos: 1 });
    }
    ev.push(Cap { pos: 0 });
    ev.push(Cap { pos: 0 });
    GeoWord::new(vec![], ev).orient().expect("pretzel construction is valid")
}

/// The same pretzel link swept from top to bottom: tassels side by side as
/// two-strand braids (width `2n`). Used to cross-check slicing independence.
pub fn pretzel_vertical(params: &[i64]) -> SliceWord {
    assert!(!params.is_empty(), "pretzel needs at least one tassel");
    use GeoEvent::*;
    let n = params.len();
    let mut ev = vec![Cup { pos: 0, left: Orient::Down }];
    for j in 0..n - 1 {
        ev.push(Cup { pos: 2 * j + 1, left: Orient::Down });
    }
    for (j, &p) in params.iter().enumerate() {
        for _ in 0..p.unsigned_abs() {
            ev.push(Cross { pos: 2 * j, over: twist_over(p, VERTICAL_POSITIVE) });
        }
    }
    for _ in 0..n - 1 {
        ev.push(Cap { pos: 1 });
    }
    ev.push(Cap { pos: 0 });
    GeoWord::new(vec![], ev).orient().expect("pretzel construction is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expected_components(params: &[i64]) -> usize {
        let evens = params.iter().filter(|p| *p % 2 == 0).count();
        match evens {
            0 if params.len() % 2 == 1 => 1,
            0 => 2,
            e => e,
        }
    }

    #[test]
    fn small_cases() {
        let p1 = pretzel(&[1]);
        assert_eq!(p1.n_components(), 1);
        assert_eq!(p1.crossing_count(), 1);
        let t = pretzel(&[1, 1, 1]);
        assert_eq!(t.writhe(), 3);
        assert_eq!(pretzel_vertical(&[1, 1, 1]).writhe(), 3);
        let kg = pretzel(&[3, 3, -3, -2]);
        assert_eq!(kg.crossing_count(), 11);
        assert_eq!(kg.n_components(), 1);
        assert!(kg.max_width() <= 6);
    }

    #[test]
    fn component_count_by_parity() {
        // exhaustive over small parameter lists
        let vals = [-3i64, -2, -1, 0, 1, 2, 4];
        for n in 1..=3usize {
            let mut idx = vec![0usize; n];
            loop {
                let params: Vec<i64> = idx.iter().map(|&i| vals[i]).collect();
                assert_eq!(pretzel(&params).n_components(), expected_components(&params), "{params:?}");
                assert_eq!(pretzel_vertical(&params).n_components(), expected_components(&params), "{params:?}");
                let mut k = 0;
                while k < n {
                    idx[k] += 1;
                    if idx[k] < vals.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
    }
}
