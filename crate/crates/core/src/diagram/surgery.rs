use super::{DiagramError, Event, GeoEvent, GeoWord, Orient, Over, SliceWord};

/// All crossing signs flipped; labels and orientations unchanged.
pub fn mirror(s: &SliceWord) -> SliceWord {
    let events = s
        .events()
        .iter()
        .map(|e| match *e {
            Event::Cross { pos, sign } => Event::Cross { pos, sign: sign.flip() },
            other => other,
        })
        .collect();
    SliceWord::new(s.top().to_vec(), events, Some(s.labels().to_vec())).unwrap()
}

/// Carries an extra strand down through `events`, passing over everything.
/// `gap` is the number of diagram strands to its left. Emits the combined
/// events and returns the final gap.
pub(crate) fn thread_over(events: &[GeoEvent], mut gap: usize, out: &mut Vec<GeoEvent>) -> usize {
    for &e in events {
        match e {
            GeoEvent::Cup { pos, left } => {
                if pos < gap {
                    out.push(GeoEvent::Cup { pos, left });
                    gap += 2;
                } else {
                    out.push(GeoEvent::Cup { pos: pos + 1, left });
                }
            }
            GeoEvent::Cap { pos } | GeoEvent::Cross { pos, .. } => {
                if gap == pos + 1 {
                    // step left over the strand at `pos` to get out of the way
                    out.push(GeoEvent::Cross { pos, over: Over::Right });
                    gap = pos;
                }
                let shifted = if pos + 1 < gap { pos } else { pos + 1 };
                out.push(match e {
                    GeoEvent::Cap { .. } => GeoEvent::Cap { pos: shifted },
                    GeoEvent::Cross { over, .. } => GeoEvent::Cross { pos: shifted, over },
                    GeoEvent::Cup { .. } => unreachable!(),
                });
                if matches!(e, GeoEvent::Cap { .. }) && pos + 1 < gap {
                    gap -= 2;
                }
            }
        }
    }
    gap
}

/// Moves a strand sitting at `gap` to `target`, over the strands between.
pub(crate) fn slide_over(mut gap: usize, target: usize, out: &mut Vec<GeoEvent>) {
    while gap < target {
        out.push(GeoEvent::Cross { pos: gap, over: Over::Left });
        gap += 1;
    }
    while gap > target {
        out.push(GeoEvent::Cross { pos: gap - 1, over: Over::Right });
        gap -= 1;
    }
}

/// Cuts component `comp` of a closed diagram open into a (1,1)-tangle whose
/// closure is the original diagram. Returns the tangle and the orientation
/// of its through strand.
fn open_component(b: &SliceWord, comp: usize) -> Result<(GeoWord, Orient), DiagramError> {
    let tr = b.trace();
    let geo = b.to_geo();
    let (j, i, o) = b
        .events()
        .iter()
        .enumerate()
        .find_map(|(t, e)| match *e {
            Event::Cup { pos, left } if tr.cuts[t + 1][pos] == comp => Some((t, pos, left)),
            _ => None,
        })
        .ok_or_else(|| DiagramError::IndexOutOfRange(format!("component {comp}")))?;
    let mut out = Vec::new();
    let gap = thread_over(&geo.events[..j], 0, &mut out);
    slide_over(gap, i, &mut out);
    // the incoming thread becomes the left arm; the right arm turns down
    out.push(GeoEvent::Cup { pos: i + 1, left: o.flip() });
    let end = thread_over(&geo.events[j + 1..], i + 2, &mut out);
    debug_assert_eq!(end, 0);
    Ok((GeoWord::new(vec![o], out), o))
}

/// Connected sum along component `comp_a` of `a` and `comp_b` of `b`, both
/// closed diagrams. Labels are regenerated.
pub fn connected_sum(a: &SliceWord, b: &SliceWord, comp_a: usize, comp_b: usize) -> Result<SliceWord, DiagramError> {
    if !a.is_closed() || !b.is_closed() {
        return Err(DiagramError::NotClosed);
    }
    if comp_a >= a.n_components() || comp_b >= b.n_components() {
        return Err(DiagramError::IndexOutOfRange(format!("components {comp_a}, {comp_b}")));
    }
    let (tangle, o) = open_component(b, comp_b)?;
    let tr = a.trace();
    let (t, p) = (0..tr.cuts.len())
        .find_map(|t| (0..tr.cuts[t].len()).find(|&p| tr.cuts[t][p] == comp_a && tr.orients[t][p] == o).map(|p| (t, p)))
        .expect("closed components have strands of both orientations");
    let ga = a.to_geo();
    let mut events: Vec<GeoEvent> = ga.events[..t].to_vec();
    events.extend(tangle.events.iter().map(|e| e.shifted(p)));
    events.extend_from_slice(&ga.events[t..]);
    GeoWord::new(vec![], events).orient()
}
