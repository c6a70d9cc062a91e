use crate::diagram::{Event, SliceWord};

/// Blackboard `r`-parallel: every strand becomes `r` parallel strands of the
/// same orientation, cups and caps become nested families and every crossing
/// becomes an `r x r` grid of crossings of the same sign.
pub fn parallel_cable(s: &SliceWord, r: usize) -> SliceWord {
    assert!(r >= 1, "cable needs at least one strand");
    let mut events = Vec::with_capacity(s.events().len() * r * r);
    for ev in s.events() {
        match *ev {
            Event::Cup { pos, left } => events.extend((0..r).map(|k| Event::Cup { pos: r * pos + k, left })),
            Event::Cap { pos } => events.extend((0..r).rev().map(|k| Event::Cap { pos: r * pos + k })),
            Event::Cross { pos, sign } => events.extend(cable_crossing(r, r * pos, sign)),
        }
    }
    let top = s.top().iter().flat_map(|&o| std::iter::repeat_n(o, r)).collect();
    SliceWord::new(top, events, None).expect("cable of a valid slice word is valid")
}

/// The left bundle at `base..base + r` passes the right bundle, moving its
/// strands across one at a time starting from the rightmost.
pub(crate) fn cable_crossing(r: usize, base: usize, sign: crate::diagram::Sign) -> impl Iterator<Item = Event> {
    (0..r).flat_map(move |k| (0..r).map(move |j| Event::Cross { pos: base + r - 1 - k + j, sign }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::linking_number;
    use crate::diagram::{braid_closure, pretzel, slice_to_pd, BraidWord};

    #[test]
    fn cable_counts() {
        let k = pretzel(&[1, 1, 1]);
        assert_eq!(parallel_cable(&k, 1), k);
        for r in 2..=3 {
            let c = parallel_cable(&k, r);
            assert_eq!(c.crossing_count(), 3 * r * r);
            assert_eq!(c.n_components(), r);
            assert_eq!(c.writhe(), 3 * (r * r) as i64);
        }
    }

    #[test]
    fn curl_cable_links_once() {
        let curl = braid_closure(&BraidWord::new(2, vec![1]).unwrap());
        let c = parallel_cable(&curl, 2);
        assert_eq!(c.n_components(), 2);
        assert_eq!(linking_number(&slice_to_pd(&c).unwrap(), 0, 1).unwrap(), 1);
    }
}
