use std::collections::HashMap;

use super::ClassicalError;
use crate::diagram::{slice_to_pd, Event, SliceWord};

pub const CONWAY_MAX_CROSSINGS: usize = 12;

// Conway polynomial truncated after z^2
type Trunc = [i64; 3];

/// Coefficient of `z^2` in the Conway polynomial of a knot, by the skein
/// relation `C(L+) - C(L-) = z C(L0)` applied until every diagram is
/// descending.
pub fn conway_a2(s: &SliceWord) -> Result<i64, ClassicalError> {
    if s.n_components() != 1 {
        return Err(ClassicalError::NotAKnot(s.n_components()));
    }
    if s.crossing_count() > CONWAY_MAX_CROSSINGS {
        return Err(ClassicalError::TooLarge { crossings: s.crossing_count(), limit: CONWAY_MAX_CROSSINGS });
    }
    if !s.is_closed() {
        return Err(crate::diagram::DiagramError::NotClosed.into());
    }
    let mut memo = HashMap::new();
    Ok(conway(s, &mut memo)[2])
}

fn conway(s: &SliceWord, memo: &mut HashMap<Vec<Event>, Trunc>) -> Trunc {
    if let Some(v) = memo.get(s.events()) {
        return *v;
    }
    let v = match first_bad_crossing(s) {
        None => {
            if s.n_components() == 1 {
                [1, 0, 0]
            } else {
                [0, 0, 0]
            }
        }
        Some(t) => {
            let Event::Cross { pos, sign } = s.events()[t] else { unreachable!() };
            let mut switched = s.events().to_vec();
            switched[t] = Event::Cross { pos, sign: sign.flip() };
            let other = conway(&SliceWord::closed(switched).unwrap(), memo);
            let smooth = conway(&smoothing(s, t), memo);
            let e = sign.value();
            [other[0], other[1] + e * smooth[0], other[2] + e * smooth[1]]
        }
    };
    memo.insert(s.events().to_vec(), v);
    v
}

/// Oriented smoothing of the crossing event at index `t`.
fn smoothing(s: &SliceWord, t: usize) -> SliceWord {
    let tr = s.trace();
    let pos = s.events()[t].pos();
    let (ol, or) = (tr.orients[t][pos], tr.orients[t][pos + 1]);
    let mut ev = s.events()[..t].to_vec();
    if ol != or {
        ev.push(Event::Cap { pos });
        ev.push(Event::Cup { pos, left: or });
    }
    ev.extend_from_slice(&s.events()[t + 1..]);
    SliceWord::closed(ev).unwrap()
}

/// Walking the components in order, each from its base point, the event
/// index of the first crossing that is first reached on its under strand.
fn first_bad_crossing(s: &SliceWord) -> Option<usize> {
    if s.crossing_count() == 0 {
        return None;
    }
    let crossing_events: Vec<usize> = s.events().iter().enumerate().filter(|(_, e)| e.is_crossing()).map(|(t, _)| t).collect();
    let pd = slice_to_pd(s).unwrap();
    let mut seen = vec![false; crossing_events.len()];
    for c in 0..pd.n_components() {
        for (x, over) in pd.gauss_code(c) {
            if !seen[x] {
                seen[x] = true;
                if !over {
                    return Some(crossing_events[x]);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{braid_closure, pretzel, BraidWord};

    fn closure(w: &str) -> SliceWord {
        braid_closure(&BraidWord::parse(w).unwrap())
    }

    #[test]
    fn small_knots() {
        assert_eq!(conway_a2(&SliceWord::unknot()).unwrap(), 0);
        assert_eq!(conway_a2(&closure("s1 s1 s1")).unwrap(), 1);
        assert_eq!(conway_a2(&closure("-s1 -s1 -s1")).unwrap(), 1);
        assert_eq!(conway_a2(&closure("s1 -s2 s1 -s2")).unwrap(), -1);
        assert_eq!(conway_a2(&closure("s1 s1 s1 s1 s1")).unwrap(), 3);
        assert!(conway_a2(&closure("s1 s1")).is_err());
    }

    #[test]
    fn mutant_pair_agrees() {
        let a = conway_a2(&pretzel(&[3, 3, -3, -2])).unwrap();
        let b = conway_a2(&pretzel(&[3, -3, 3, -2])).unwrap();
        assert_eq!(a, b);
    }
}
