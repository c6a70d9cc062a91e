use serde::{Deserialize, Serialize};

use super::geo::{GeoEvent, GeoWord};
use super::{over_strand, DiagramError, Orient, Sign, FORMAT_VERSION};

/// One elementary slice. Positions count strands from the left in the cut
/// just above the event.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    /// New strands at `pos`, `pos + 1`; the left one has orientation `left`.
    Cup { pos: usize, left: Orient },
    /// Joins the strands at `pos`, `pos + 1`.
    Cap { pos: usize },
    /// Crossing of the strands at `pos`, `pos + 1`; they swap places.
    Cross { pos: usize, sign: Sign },
}

impl Event {
    pub fn pos(&self) -> usize {
        match *self {
            Event::Cup { pos, .. } | Event::Cap { pos } | Event::Cross { pos, .. } => pos,
        }
    }

    pub fn with_pos(self, pos: usize) -> Event {
        match self {
            Event::Cup { left, .. } => Event::Cup { pos, left },
            Event::Cap { .. } => Event::Cap { pos },
            Event::Cross { sign, .. } => Event::Cross { pos, sign },
        }
    }

    pub fn is_crossing(&self) -> bool {
        matches!(self, Event::Cross { .. })
    }

    /// Strand count change.
    pub fn width_delta(&self) -> isize {
        match self {
            Event::Cup { .. } => 2,
            Event::Cap { .. } => -2,
            Event::Cross { .. } => 0,
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum EventRepr {
    Cup { pos: usize, orient: Orient },
    Cap { pos: usize },
    Xpos { pos: usize },
    Xneg { pos: usize },
}

impl From<Event> for EventRepr {
    fn from(e: Event) -> Self {
        match e {
            Event::Cup { pos, left } => EventRepr::Cup { pos, orient: left },
            Event::Cap { pos } => EventRepr::Cap { pos },
            Event::Cross { pos, sign: Sign::Pos } => EventRepr::Xpos { pos },
            Event::Cross { pos, sign: Sign::Neg } => EventRepr::Xneg { pos },
        }
    }
}

impl From<EventRepr> for Event {
    fn from(e: EventRepr) -> Self {
        match e {
            EventRepr::Cup { pos, orient } => Event::Cup { pos, left: orient },
            EventRepr::Cap { pos } => Event::Cap { pos },
            EventRepr::Xpos { pos } => Event::Cross { pos, sign: Sign::Pos },
            EventRepr::Xneg { pos } => Event::Cross { pos, sign: Sign::Neg },
        }
    }
}

/// Oriented, ordered, labeled link or tangle diagram as a sequence of slices.
///
/// Components are numbered canonically: arcs meeting the top boundary in
/// left-to-right order of their first top endpoint, then the remaining
/// components in order of their first cup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SliceWord {
    top: Vec<Orient>,
    events: Vec<Event>,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct SliceWordRepr {
    format: u32,
    #[serde(default)]
    top: Vec<Orient>,
    events: Vec<EventRepr>,
    labels: Vec<String>,
}

/// Per-cut strand data obtained by walking a slice word.
#[derive(Clone, Debug)]
pub struct Trace {
    pub n_components: usize,
    /// `cuts[t][p]`: component of the strand at position `p` above event `t`
    /// (the last entry is the bottom boundary).
    pub cuts: Vec<Vec<usize>>,
    /// Orientations, same layout as `cuts`.
    pub orients: Vec<Vec<Orient>>,
    /// Whether each component meets the boundary.
    pub is_arc: Vec<bool>,
}

impl Trace {
    pub fn bottom(&self) -> &[Orient] {
        self.orients.last().unwrap()
    }

    /// Components of the strands at an event (both equal for cups and caps).
    pub fn event_components(&self, t: usize, ev: &Event) -> (usize, usize) {
        match *ev {
            Event::Cup { pos, .. } => {
                let c = self.cuts[t + 1][pos];
                (c, c)
            }
            Event::Cap { pos } | Event::Cross { pos, .. } => (self.cuts[t][pos], self.cuts[t][pos + 1]),
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
}

impl UnionFind {
    pub(crate) fn new() -> Self {
        UnionFind { parent: Vec::new(), parity: Vec::new() }
    }

    pub(crate) fn add(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parity.push(false);
        self.parent.len() - 1
    }

    /// Root and parity relative to the root.
    pub(crate) fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let p = self.parent[x];
        let (r, pp) = self.find(p);
        self.parent[x] = r;
        self.parity[x] ^= pp;
        (r, self.parity[x])
    }

    /// Joins with the constraint `parity(a) ^ parity(b) == rel`; returns
    /// false if this contradicts earlier constraints.
    pub(crate) fn union(&mut self, a: usize, b: usize, rel: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        self.parity[hi] = pa ^ pb ^ rel;
        true
    }

    pub(crate) fn len(&self) -> usize {
        self.parent.len()
    }
}

/// Walks the events, assigning a piece id to every top strand and cup, and
/// checking position bounds. Returns per-cut piece ids and the piece union
/// structure (caps join pieces).
pub(crate) fn walk_pieces<F>(top: usize, events: &[(usize, u8)], mut on_cap: F) -> Result<(Vec<Vec<usize>>, UnionFind), DiagramError>
where
    F: FnMut(usize, usize, usize, &mut UnionFind) -> Result<(), DiagramError>,
{
    // event kinds: 0 cup, 1 cap, 2 cross
    let mut uf = UnionFind::new();
    let mut state: Vec<usize> = (0..top).map(|_| uf.add()).collect();
    let mut cuts = Vec::with_capacity(events.len() + 1);
    cuts.push(state.clone());
    for (t, &(pos, kind)) in events.iter().enumerate() {
        let n = state.len();
        match kind {
            0 => {
                if pos > n {
                    return Err(DiagramError::InvalidEvent { index: t, reason: format!("cup at {pos} with {n} strands") });
                }
                let id = uf.add();
                state.insert(pos, id);
                state.insert(pos, id);
            }
            1 => {
                if pos + 1 >= n {
                    return Err(DiagramError::InvalidEvent { index: t, reason: format!("cap at {pos} with {n} strands") });
                }
                on_cap(t, state[pos], state[pos + 1], &mut uf)?;
                state.drain(pos..pos + 2);
            }
            _ => {
                if pos + 1 >= n {
                    return Err(DiagramError::InvalidEvent { index: t, reason: format!("crossing at {pos} with {n} strands") });
                }
                state.swap(pos, pos + 1);
            }
        }
        cuts.push(state.clone());
    }
    Ok((cuts, uf))
}

impl SliceWord {
    /// Validates and builds; `labels` defaults to "1", "2", ... .
    pub fn new(top: Vec<Orient>, events: Vec<Event>, labels: Option<Vec<String>>) -> Result<Self, DiagramError> {
        let mut s = SliceWord { top, events, labels: Vec::new() };
        let tr = s.trace_checked()?;
        s.labels = match labels {
            Some(l) => {
                if l.len() != tr.n_components {
                    return Err(DiagramError::LabelCount { expected: tr.n_components, found: l.len() });
                }
                l
            }
            None => (1..=tr.n_components).map(|i| i.to_string()).collect(),
        };
        Ok(s)
    }

    /// Closed diagram with default labels.
    pub fn closed(events: Vec<Event>) -> Result<Self, DiagramError> {
        let s = Self::new(Vec::new(), events, None)?;
        if !s.is_closed() {
            return Err(DiagramError::NotClosed);
        }
        Ok(s)
    }

    pub fn unknot() -> Self {
        Self::closed(vec![Event::Cup { pos: 0, left: Orient::Down }, Event::Cap { pos: 0 }]).unwrap()
    }

    pub fn top(&self) -> &[Orient] {
        &self.top
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, DiagramError> {
        if labels.len() != self.labels.len() {
            return Err(DiagramError::LabelCount { expected: self.labels.len(), found: labels.len() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n_components(&self) -> usize {
        self.labels.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_crossing()).count()
    }

    pub fn writhe(&self) -> i64 {
        self.events
            .iter()
            .map(|e| match e {
                Event::Cross { sign, .. } => sign.value(),
                _ => 0,
            })
            .sum()
    }

    /// Strand counts at every cut, top to bottom.
    pub fn widths(&self) -> Vec<usize> {
        let mut w = self.top.len() as isize;
        let mut out = vec![w as usize];
        for e in &self.events {
            w += e.width_delta();
            out.push(w as usize);
        }
        out
    }

    pub fn max_width(&self) -> usize {
        self.widths().into_iter().max().unwrap_or(0)
    }

    pub fn bottom_len(&self) -> usize {
        *self.widths().last().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.top.is_empty() && self.bottom_len() == 0
    }

    fn trace_checked(&self) -> Result<Trace, DiagramError> {
        let kinds: Vec<(usize, u8)> = self
            .events
            .iter()
            .map(|e| match *e {
                Event::Cup { pos, .. } => (pos, 0),
                Event::Cap { pos } => (pos, 1),
                Event::Cross { pos, .. } => (pos, 2),
            })
            .collect();
        // orientation check happens in the replay below; caps only join here
        let (piece_cuts, mut uf) = walk_pieces(self.top.len(), &kinds, |_, a, b, uf| {
            uf.union(a, b, false);
            Ok(())
        })?;
        let n_pieces = uf.len();
        let mut comp_of_root = vec![usize::MAX; n_pieces];
        let mut piece_comp = vec![0; n_pieces];
        let mut n_components = 0;
        for p in 0..n_pieces {
            let (r, _) = uf.find(p);
            if comp_of_root[r] == usize::MAX {
                comp_of_root[r] = n_components;
                n_components += 1;
            }
            piece_comp[p] = comp_of_root[r];
        }
        let mut orients = Vec::with_capacity(self.events.len() + 1);
        let mut cur = self.top.clone();
        orients.push(cur.clone());
        for (t, e) in self.events.iter().enumerate() {
            match *e {
                Event::Cup { pos, left } => {
                    cur.insert(pos, left.flip());
                    cur.insert(pos, left);
                }
                Event::Cap { pos } => {
                    if cur[pos] == cur[pos + 1] {
                        return Err(DiagramError::InvalidEvent { index: t, reason: "cap joins equally oriented strands".into() });
                    }
                    cur.drain(pos..pos + 2);
                }
                Event::Cross { pos, .. } => cur.swap(pos, pos + 1),
            }
            orients.push(cur.clone());
        }
        let cuts: Vec<Vec<usize>> = piece_cuts.iter().map(|c| c.iter().map(|&p| piece_comp[p]).collect()).collect();
        let mut is_arc = vec![false; n_components];
        for &c in cuts.first().unwrap().iter().chain(cuts.last().unwrap().iter()) {
            is_arc[c] = true;
        }
        Ok(Trace { n_components, cuts, orients, is_arc })
    }

    pub fn trace(&self) -> Trace {
        self.trace_checked().expect("slice word validated at construction")
    }

    pub fn bottom(&self) -> Vec<Orient> {
        self.trace().bottom().to_vec()
    }

    /// Geometric form (over/under instead of signs).
    pub fn to_geo(&self) -> GeoWord {
        let tr = self.trace();
        let events = self
            .events
            .iter()
            .enumerate()
            .map(|(t, e)| match *e {
                Event::Cup { pos, left } => GeoEvent::Cup { pos, left },
                Event::Cap { pos } => GeoEvent::Cap { pos },
                Event::Cross { pos, sign } => {
                    let o = &tr.orients[t];
                    GeoEvent::Cross { pos, over: over_strand(sign, o[pos], o[pos + 1]) }
                }
            })
            .collect();
        GeoWord::new(self.top.clone(), events)
    }

    /// Reverses the orientation of the given components.
    pub fn reverse_components(&self, comps: &[usize]) -> Result<SliceWord, DiagramError> {
        let mut flips = vec![false; self.n_components()];
        for &c in comps {
            if c >= flips.len() {
                return Err(DiagramError::IndexOutOfRange(format!("component {c}")));
            }
            flips[c] = true;
        }
        self.to_geo().orient_with(&flips, Some(self.labels.clone()))
    }

    /// Removes every strand of the listed components.
    pub fn delete_components(&self, comps: &[usize]) -> Result<SliceWord, DiagramError> {
        let n = self.n_components();
        if let Some(&c) = comps.iter().find(|&&c| c >= n) {
            return Err(DiagramError::IndexOutOfRange(format!("component {c}")));
        }
        let tr = self.trace();
        let dead = |c: usize| comps.contains(&c);
        let reduced = |t: usize, pos: usize| tr.cuts[t][..pos].iter().filter(|&&c| !dead(c)).count();
        let mut events = Vec::new();
        for (t, e) in self.events.iter().enumerate() {
            let (a, b) = tr.event_components(t, e);
            if dead(a) || dead(b) {
                continue;
            }
            events.push(e.with_pos(reduced(t, e.pos())));
        }
        let top = self.top.iter().zip(&tr.cuts[0]).filter(|(_, &c)| !dead(c)).map(|(&o, _)| o).collect();
        let labels = self.labels.iter().enumerate().filter(|(i, _)| !dead(*i)).map(|(_, l)| l.clone()).collect();
        SliceWord::new(top, events, Some(labels))
    }

    /// Stacks `other` below `self`; the bottom of `self` must match the top
    /// of `other`. Labels are regenerated.
    pub fn concat(&self, other: &SliceWord) -> Result<SliceWord, DiagramError> {
        if self.bottom() != other.top {
            return Err(DiagramError::Incompatible("bottom and top boundaries differ".into()));
        }
        let mut events = self.events.clone();
        events.extend_from_slice(&other.events);
        SliceWord::new(self.top.clone(), events, None)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.repr()).unwrap()
    }

    fn repr(&self) -> SliceWordRepr {
        SliceWordRepr {
            format: FORMAT_VERSION,
            top: self.top.clone(),
            events: self.events.iter().map(|&e| e.into()).collect(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let repr: SliceWordRepr = serde_json::from_str(text).map_err(|e| DiagramError::Parse(e.to_string()))?;
        Self::from_repr(repr)
    }

    fn from_repr(repr: SliceWordRepr) -> Result<Self, DiagramError> {
        if repr.format != FORMAT_VERSION {
            return Err(DiagramError::UnsupportedFormat(repr.format));
        }
        SliceWord::new(repr.top, repr.events.into_iter().map(Event::from).collect(), Some(repr.labels))
    }
}

impl Serialize for SliceWord {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.repr().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SliceWord {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = SliceWordRepr::deserialize(de)?;
        Self::from_repr(repr).map_err(serde::de::Error::custom)
    }
}
