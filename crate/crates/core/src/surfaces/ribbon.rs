use std::collections::HashMap;

use super::{RibbonSurface, SurfaceError};
use crate::diagram::{GeoEvent, GeoWord, Orient, Over};

/// A curve line drawn along the ribbon. Lines of layer 1 lie just above the
/// surface and pass over layer-0 lines inside the vertex disks.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Line {
    pub layer: u8,
    /// Whether the line leaves the top disk downward into its band.
    pub down_at_top: bool,
}

pub(crate) enum BottomArcs {
    Explicit(Vec<(usize, usize)>),
    /// Two-line bands joined side to side as in the planar bottom disk.
    Boundary,
}

/// Lines on each band (in screen order at the top) and how the vertex disks
/// join their ends.
pub(crate) struct RibbonPlan {
    pub lines: Vec<Line>,
    pub bands: [Vec<usize>; 3],
    pub top_arcs: Vec<(usize, usize)>,
    pub bottom: BottomArcs,
}

pub(crate) struct RibbonDiagram {
    pub geo: GeoWord,
    /// Event index of the cup opening each top arc.
    pub top_cups: Vec<usize>,
}

enum DiskOp {
    Cap { pos: usize, left: usize, right: usize, arc: usize },
    Swap { pos: usize },
}

fn over_by_layer(lines: &[Line], left: usize, right: usize) -> Result<Over, SurfaceError> {
    match lines[left].layer.cmp(&lines[right].layer) {
        std::cmp::Ordering::Greater => Ok(Over::Left),
        std::cmp::Ordering::Less => Ok(Over::Right),
        std::cmp::Ordering::Equal => Err(SurfaceError::Internal("two arcs on the same layer cross in a vertex disk".into())),
    }
}

/// Caps and swaps closing off `order` along `arcs`: adjacent arc ends are
/// capped, otherwise the right end of the shortest arc moves one step left.
fn close_disk(order: &[usize], arcs: &[(usize, usize)], lines: &[Line]) -> Result<Vec<DiskOp>, SurfaceError> {
    let mut arc_of = HashMap::new();
    for (k, &(a, b)) in arcs.iter().enumerate() {
        arc_of.insert(a, k);
        arc_of.insert(b, k);
    }
    if arc_of.len() != order.len() || order.iter().any(|l| !arc_of.contains_key(l)) {
        return Err(SurfaceError::Internal("disk arcs do not match the band ends".into()));
    }
    let mut cur = order.to_vec();
    let mut ops = Vec::new();
    while !cur.is_empty() {
        if let Some(p) = (0..cur.len() - 1).find(|&p| arc_of[&cur[p]] == arc_of[&cur[p + 1]]) {
            ops.push(DiskOp::Cap { pos: p, left: cur[p], right: cur[p + 1], arc: arc_of[&cur[p]] });
            cur.drain(p..p + 2);
            continue;
        }
        let mut first = HashMap::new();
        let mut best = (usize::MAX, 0);
        for (p, l) in cur.iter().enumerate() {
            match first.get(&arc_of[l]) {
                Some(&q) => best = best.min((p - q, p)),
                None => {
                    first.insert(arc_of[l], p);
                }
            }
        }
        let q = best.1;
        over_by_layer(lines, cur[q - 1], cur[q])?;
        ops.push(DiskOp::Swap { pos: q - 1 });
        cur.swap(q - 1, q);
    }
    Ok(ops)
}

fn orient(down: bool) -> Orient {
    if down {
        Orient::Down
    } else {
        Orient::Up
    }
}

/// Braid crossings twisting `w` parallel downward lines at `base`: `full`
/// full twists, then a half twist of sign `half`.
fn twist_events(base: usize, w: usize, full: i64, half: i8) -> Vec<GeoEvent> {
    let mut gens = Vec::new();
    for _ in 0..full.unsigned_abs() {
        for _ in 0..w {
            gens.extend(0..w.saturating_sub(1));
        }
    }
    let mut half_gens = Vec::new();
    if half != 0 {
        for i in 1..w {
            half_gens.extend((0..i).rev());
        }
    }
    let sided = |g: &[usize], positive: bool| {
        // positive twists on downward lines have the right strand over
        let over = if positive { Over::Right } else { Over::Left };
        g.iter().map(move |&p| GeoEvent::Cross { pos: base + p, over }).collect::<Vec<_>>()
    };
    let mut out = sided(&gens, full > 0);
    out.extend(sided(&half_gens, half > 0));
    out
}

/// Draws the plan's lines along the ribbon of `s`: top disk, band twists,
/// the cabled core tangle, then the bottom disk.
pub(crate) fn draw(s: &RibbonSurface, plan: &RibbonPlan) -> Result<RibbonDiagram, SurfaceError> {
    let lines = &plan.lines;
    let mut events = Vec::new();

    let top_order: Vec<usize> = plan.bands.concat();
    let ops = close_disk(&top_order, &plan.top_arcs, lines)?;
    let mut cur: Vec<usize> = Vec::new();
    let mut top_cups = vec![0; plan.top_arcs.len()];
    for op in ops.iter().rev() {
        match *op {
            DiskOp::Cap { pos, left, right, arc } => {
                top_cups[arc] = events.len();
                events.push(GeoEvent::Cup { pos, left: orient(lines[left].down_at_top) });
                cur.insert(pos, right);
                cur.insert(pos, left);
            }
            DiskOp::Swap { pos } => {
                events.push(GeoEvent::Cross { pos, over: over_by_layer(lines, cur[pos], cur[pos + 1])? });
                cur.swap(pos, pos + 1);
            }
        }
    }
    debug_assert_eq!(cur, top_order);

    // An odd core permutation reverses the cyclic order of the bands at the
    // bottom vertex, so the bottom disk is turned over and every band gets
    // an extra half twist to keep the surface planar.
    let turned = super::odd_permutation(s.core.perm());
    let mut order = plan.bands.clone();
    let mut base = 0;
    for e in 0..3 {
        let w = order[e].len();
        events.extend(twist_events(base, w, s.twists[e], s.half[e]));
        if turned {
            events.extend(twist_events(base, w, 0, 1));
        }
        if (s.half[e] != 0) != turned {
            order[e].reverse();
        }
        base += w;
    }
    let bottom_flipped = (s.half[0] != 0) != turned;

    let core = s.core.tangle();
    let tr = core.trace();
    let mut bundles: Vec<Vec<usize>> = order.to_vec();
    let offset = |b: &[Vec<usize>], pos: usize| b[..pos].iter().map(Vec::len).sum::<usize>();
    for (t, ev) in core.to_geo().events.iter().enumerate() {
        match *ev {
            GeoEvent::Cup { pos, .. } => {
                let (e, o) = (tr.cuts[t + 1][pos], tr.orients[t + 1][pos]);
                let mut left = order[e].clone();
                if o == Orient::Up {
                    left.reverse();
                }
                let right: Vec<usize> = left.iter().rev().copied().collect();
                let b = offset(&bundles, pos);
                events.extend((0..left.len()).map(|k| GeoEvent::Cup { pos: b + k, left: o }));
                bundles.insert(pos, right);
                bundles.insert(pos, left);
            }
            GeoEvent::Cap { pos } => {
                let b = offset(&bundles, pos);
                events.extend((0..bundles[pos].len()).rev().map(|k| GeoEvent::Cap { pos: b + k }));
                bundles.drain(pos..pos + 2);
            }
            GeoEvent::Cross { pos, over } => {
                let b = offset(&bundles, pos);
                let (wa, wb) = (bundles[pos].len(), bundles[pos + 1].len());
                for k in 0..wa {
                    events.extend((0..wb).map(|j| GeoEvent::Cross { pos: b + wa - 1 - k + j, over }));
                }
                bundles.swap(pos, pos + 1);
            }
        }
    }

    let bottom_arcs = match &plan.bottom {
        BottomArcs::Explicit(arcs) => arcs.clone(),
        BottomArcs::Boundary => {
            let side = |b: &Vec<usize>, right: bool| if right { *b.last().unwrap() } else { b[0] };
            vec![
                (side(&bundles[0], true), side(&bundles[1], false)),
                (side(&bundles[1], true), side(&bundles[2], false)),
                (side(&bundles[0], false), side(&bundles[2], true)),
            ]
        }
    };
    let mut cur: Vec<usize> = bundles.concat();
    for op in close_disk(&cur, &bottom_arcs, lines)? {
        match op {
            DiskOp::Cap { pos, .. } => {
                events.push(GeoEvent::Cap { pos });
                cur.drain(pos..pos + 2);
            }
            DiskOp::Swap { pos } => {
                // seen from behind, the upper layer passes under
                let over = over_by_layer(lines, cur[pos], cur[pos + 1])?;
                events.push(GeoEvent::Cross { pos, over: if bottom_flipped { over.flip() } else { over } });
                cur.swap(pos, pos + 1);
            }
        }
    }
    Ok(RibbonDiagram { geo: GeoWord::new(vec![], events), top_cups })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_words() {
        assert_eq!(twist_events(0, 1, 3, 1).len(), 0);
        assert_eq!(twist_events(2, 2, 1, 0), vec![GeoEvent::Cross { pos: 2, over: Over::Right }; 2]);
        assert_eq!(twist_events(0, 3, -1, 0).len(), 6);
        let half = twist_events(0, 3, 0, -1);
        assert_eq!(half.len(), 3);
        assert!(half.iter().all(|e| matches!(e, GeoEvent::Cross { over: Over::Left, .. })));
    }

    #[test]
    fn interleaved_arcs_need_layers() {
        let flat = [Line { layer: 0, down_at_top: true }; 4];
        assert!(close_disk(&[0, 1, 2, 3], &[(0, 2), (1, 3)], &flat).is_err());
        let mut lifted = flat;
        lifted[1].layer = 1;
        lifted[3].layer = 1;
        let ops = close_disk(&[0, 1, 2, 3], &[(0, 2), (1, 3)], &lifted).unwrap();
        assert_eq!(ops.iter().filter(|o| matches!(o, DiskOp::Swap { .. })).count(), 1);
        assert!(close_disk(&[0, 1, 2, 3], &[(0, 3), (1, 2)], &flat).is_ok());
    }
}
