//! Shared generators for the integration tests: fixture diagrams, random
//! closed diagrams and random Reidemeister rewrites.
#![allow(dead_code)]

use knotcalc::diagram::{braid_closure, pretzel, pretzel_vertical, BraidWord, GeoEvent, GeoWord, Orient, Over, SliceWord, ThetaTangle};
use knotcalc::moves::MoveSite;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn braid(n: usize, gens: &[i32]) -> SliceWord {
    braid_closure(&BraidWord::new(n, gens.to_vec()).unwrap())
}

/// Knots and links with at most eight crossings.
pub fn fixtures() -> Vec<(&'static str, SliceWord)> {
    let rep = |g: &[i32], k: usize| g.iter().copied().cycle().take(g.len() * k).collect::<Vec<_>>();
    vec![
        ("unknot", SliceWord::unknot()),
        ("3_1", braid(2, &[1, 1, 1])),
        ("3_1 mirror", braid(2, &[-1, -1, -1])),
        ("4_1", braid(3, &[1, -2, 1, -2])),
        ("5_1", braid(2, &[1; 5])),
        ("5_2", braid(3, &[1, 1, 1, 2, -1, 2])),
        ("6_1", pretzel(&[5, -1, -1])),
        ("6_2", braid(3, &[1, 1, 1, -2, 1, -2])),
        ("6_3", braid(3, &[1, 1, -2, 1, -2, -2])),
        ("7_1", braid(2, &[1; 7])),
        ("granny", braid(3, &[1, 1, 1, 2, 2, 2])),
        ("square", braid(3, &[1, 1, 1, -2, -2, -2])),
        ("8_19", braid(3, &rep(&[1, 2], 4))),
        ("P(-2,3,3)", pretzel(&[-2, 3, 3])),
        ("P(1,1,1) vertical", pretzel_vertical(&[1, 1, 1])),
        ("P(3,-1,-1,1)", pretzel(&[3, -1, -1, 1])),
        ("hopf", braid(2, &[1, 1])),
        ("hopf mirror", braid(2, &[-1, -1])),
        ("T(2,4)", braid(2, &[1; 4])),
        ("T(2,6)", braid(2, &[1; 6])),
        ("unlink", braid(2, &[1, -1])),
        ("whitehead-type", braid(3, &[1, 1, -2, 1, -2])),
        ("borromean", braid(3, &rep(&[1, -2], 3))),
        ("P(2,2,2)", pretzel(&[2, 2, 2])),
        ("chain", braid(3, &[1, 1, 2, 2])),
    ]
}

fn any_over(r: &mut impl Rng) -> Over {
    if r.gen_bool(0.5) {
        Over::Left
    } else {
        Over::Right
    }
}

fn any_orient(r: &mut impl Rng) -> Orient {
    if r.gen_bool(0.5) {
        Orient::Down
    } else {
        Orient::Up
    }
}

/// A random closed diagram swept from top to bottom, with between
/// `max_cross / 2` and `max_cross` crossings and at most `max_width`
/// strands in any cut.
pub fn random_closed(r: &mut impl Rng, max_cross: usize, max_width: usize) -> SliceWord {
    use GeoEvent::*;
    let target = r.gen_range(max_cross / 2..=max_cross);
    let mut ev = vec![Cup { pos: 0, left: any_orient(r) }];
    let (mut w, mut crosses) = (2usize, 0usize);
    while w > 0 {
        let roll = r.gen_range(0..20);
        if crosses < target && roll < 12 {
            ev.push(Cross { pos: r.gen_range(0..w - 1), over: any_over(r) });
            crosses += 1;
        } else if crosses < target && w + 2 <= max_width && roll < 17 {
            ev.push(Cup { pos: r.gen_range(0..=w), left: any_orient(r) });
            w += 2;
        } else if crosses >= target || w > 2 {
            ev.push(Cap { pos: r.gen_range(0..w - 1) });
            w -= 2;
        }
    }
    GeoWord::new(vec![], ev).orient().unwrap()
}

pub fn random_knot(r: &mut impl Rng, max_cross: usize, max_width: usize) -> SliceWord {
    loop {
        let k = random_closed(r, max_cross, max_width);
        if k.n_components() == 1 {
            return k;
        }
    }
}

pub fn random_braid(r: &mut impl Rng, strands: usize, len: usize) -> BraidWord {
    let gens = (0..len)
        .map(|_| {
            let g = r.gen_range(1..strands as i32);
            if r.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(strands, gens).unwrap()
}

/// Random local rewrite that preserves the link type.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rewrite {
    /// Reidemeister I curl.
    Curl,
    /// Reidemeister II pair.
    Pair,
    /// Reidemeister III triangle followed by the inverse of its other side.
    Triangle,
    /// Cup/cap cancellation.
    Zigzag,
    /// Swap of two distant adjacent crossings.
    Commute,
}

impl Rewrite {
    pub const ALL: [Rewrite; 5] = [Rewrite::Curl, Rewrite::Pair, Rewrite::Triangle, Rewrite::Zigzag, Rewrite::Commute];
    /// Rewrites that keep the framing and the component numbering.
    pub const FRAMED: [Rewrite; 3] = [Rewrite::Pair, Rewrite::Triangle, Rewrite::Commute];
    /// Planar isotopies.
    pub const PLANAR: [Rewrite; 2] = [Rewrite::Zigzag, Rewrite::Commute];
}

fn triangle_overs(heights: &[usize; 3], seq: &[usize]) -> Vec<(usize, Over)> {
    let mut order = [0usize, 1, 2];
    seq.iter()
        .map(|&i| {
            let over = if heights[order[i]] > heights[order[i + 1]] { Over::Left } else { Over::Right };
            order.swap(i, i + 1);
            (i, over)
        })
        .collect()
}

/// Applies `kind` at a random place; `None` when the diagram has no place
/// for it.
pub fn apply(s: &SliceWord, kind: Rewrite, r: &mut impl Rng) -> Option<SliceWord> {
    use GeoEvent::*;
    let mut geo = s.to_geo();
    let tr = s.trace();
    let n = geo.events.len();
    let cuts: Vec<usize> = (0..=n).filter(|&t| !tr.cuts[t].is_empty()).collect();
    let insert = |geo: &mut GeoWord, t: usize, ins: Vec<GeoEvent>| {
        geo.events.splice(t..t, ins);
    };
    match kind {
        Rewrite::Commute => {
            let spots: Vec<usize> = (0..n.saturating_sub(1))
                .filter(|&t| match (geo.events[t], geo.events[t + 1]) {
                    (Cross { pos: a, .. }, Cross { pos: b, .. }) => a.abs_diff(b) >= 2,
                    _ => false,
                })
                .collect();
            let &t = spots.choose(r)?;
            geo.events.swap(t, t + 1);
        }
        Rewrite::Curl | Rewrite::Zigzag => {
            let &t = cuts.choose(r)?;
            let p = r.gen_range(0..tr.cuts[t].len());
            let o = tr.orients[t][p];
            let ins = match (kind, r.gen_bool(0.5)) {
                (Rewrite::Curl, true) => vec![Cup { pos: p + 1, left: o }, Cross { pos: p, over: any_over(r) }, Cap { pos: p + 1 }],
                (Rewrite::Curl, false) => vec![Cup { pos: p, left: o.flip() }, Cross { pos: p + 1, over: any_over(r) }, Cap { pos: p }],
                (_, true) => vec![Cup { pos: p + 1, left: o.flip() }, Cap { pos: p }],
                (_, false) => vec![Cup { pos: p, left: o }, Cap { pos: p + 1 }],
            };
            insert(&mut geo, t, ins);
        }
        Rewrite::Pair => {
            let wide: Vec<usize> = cuts.iter().copied().filter(|&t| tr.cuts[t].len() >= 2).collect();
            let &t = wide.choose(r)?;
            let p = r.gen_range(0..tr.cuts[t].len() - 1);
            let over = any_over(r);
            insert(&mut geo, t, vec![Cross { pos: p, over }, Cross { pos: p, over: over.flip() }]);
        }
        Rewrite::Triangle => {
            let wide: Vec<usize> = cuts.iter().copied().filter(|&t| tr.cuts[t].len() >= 3).collect();
            let &t = wide.choose(r)?;
            let p = r.gen_range(0..tr.cuts[t].len() - 2);
            let mut heights = [0usize, 1, 2];
            heights.shuffle(r);
            let mut ins: Vec<GeoEvent> = triangle_overs(&heights, &[0, 1, 0]).into_iter().map(|(i, over)| Cross { pos: p + i, over }).collect();
            let rhs = triangle_overs(&heights, &[1, 0, 1]);
            ins.extend(rhs.into_iter().rev().map(|(i, over)| Cross { pos: p + i, over: over.flip() }));
            insert(&mut geo, t, ins);
        }
    }
    Some(geo.orient_with(&[], Some(s.labels().to_vec())).unwrap())
}

/// A chain of `steps` random rewrites drawn from `kinds`.
pub fn scramble(s: &SliceWord, kinds: &[Rewrite], steps: usize, r: &mut impl Rng) -> SliceWord {
    let mut cur = s.clone();
    for _ in 0..steps {
        let kind = *kinds.choose(r).unwrap();
        if let Some(next) = apply(&cur, kind, r) {
            cur = next;
        }
    }
    cur
}

/// A random site for a model with `arcs` arcs, or `None` when no cut is wide
/// enough.
pub fn random_site(r: &mut impl Rng, host: &SliceWord, arcs: usize) -> Option<MoveSite> {
    let tr = host.trace();
    let cuts: Vec<usize> = (0..tr.cuts.len()).filter(|&t| tr.cuts[t].len() >= arcs).collect();
    let &cut = cuts.choose(r)?;
    let mut strands: Vec<usize> = (0..tr.cuts[cut].len()).collect();
    strands.shuffle(r);
    strands.truncate(arcs);
    let over = (0..arcs - 1).map(|_| r.gen_bool(0.5)).collect();
    Some(MoveSite { cut, strands, over, mirror: r.gen_bool(0.5) })
}

/// A random theta tangle with at most `max_cross` crossings: a braid
/// followed by rewrites that introduce cups, caps and extra crossings.
pub fn random_theta(r: &mut impl Rng, max_cross: usize) -> ThetaTangle {
    let len = r.gen_range(0..=max_cross.min(8));
    let mut s = random_braid(r, 3, len).to_tangle();
    for _ in 0..r.gen_range(0..4) {
        let kind = *Rewrite::ALL.choose(r).unwrap();
        if let Some(t) = apply(&s, kind, r) {
            if t.crossing_count() <= max_cross {
                s = t;
            }
        }
    }
    ThetaTangle::new(s).unwrap()
}

/// Adds cup/cap zigzags until some cut has at least `width` strands.
pub fn widen(s: &SliceWord, width: usize, r: &mut impl Rng) -> SliceWord {
    let mut cur = s.clone();
    while cur.max_width() < width {
        cur = apply(&cur, Rewrite::Zigzag, r).expect("nonempty diagram");
    }
    cur
}
