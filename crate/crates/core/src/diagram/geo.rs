use super::slice::walk_pieces;
use super::{sign_from_geometry, DiagramError, Event, Orient, Over, SliceWord};

/// Slice event with crossing geometry in place of a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeoEvent {
    Cup { pos: usize, left: Orient },
    Cap { pos: usize },
    Cross { pos: usize, over: Over },
}

impl GeoEvent {
    pub fn pos(&self) -> usize {
        match *self {
            GeoEvent::Cup { pos, .. } | GeoEvent::Cap { pos } | GeoEvent::Cross { pos, .. } => pos,
        }
    }

    pub fn shifted(self, by: usize) -> GeoEvent {
        match self {
            GeoEvent::Cup { pos, left } => GeoEvent::Cup { pos: pos + by, left },
            GeoEvent::Cap { pos } => GeoEvent::Cap { pos: pos + by },
            GeoEvent::Cross { pos, over } => GeoEvent::Cross { pos: pos + by, over },
        }
    }

    fn kind(&self) -> (usize, u8) {
        match *self {
            GeoEvent::Cup { pos, .. } => (pos, 0),
            GeoEvent::Cap { pos } => (pos, 1),
            GeoEvent::Cross { pos, .. } => (pos, 2),
        }
    }
}

/// Unoriented-geometry diagram. Orientations on the top boundary and cups
/// are provisional: `orient` makes them consistent along each component,
/// keeping the provisional direction of each component's first piece.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeoWord {
    pub top: Vec<Orient>,
    pub events: Vec<GeoEvent>,
}

impl GeoWord {
    pub fn new(top: Vec<Orient>, events: Vec<GeoEvent>) -> Self {
        GeoWord { top, events }
    }

    pub fn mirror(&self) -> GeoWord {
        let events = self
            .events
            .iter()
            .map(|e| match *e {
                GeoEvent::Cross { pos, over } => GeoEvent::Cross { pos, over: over.flip() },
                other => other,
            })
            .collect();
        GeoWord::new(self.top.clone(), events)
    }

    pub fn orient(&self) -> Result<SliceWord, DiagramError> {
        self.orient_with(&[], None)
    }

    /// Consistent orientation; components listed as `true` in `flips` (by
    /// canonical component index) are reversed relative to the default.
    pub fn orient_with(&self, flips: &[bool], labels: Option<Vec<String>>) -> Result<SliceWord, DiagramError> {
        let kinds: Vec<(usize, u8)> = self.events.iter().map(|e| e.kind()).collect();
        // provisional orientation of every piece, in piece-id order
        let mut prov: Vec<Orient> = self.top.clone();
        for e in &self.events {
            if let GeoEvent::Cup { left, .. } = e {
                prov.push(*left);
            }
        }
        // orientation of a piece at a position: pieces are single arcs, and
        // a cup's right arm runs opposite to its left arm
        let mut cur_prov: Vec<Orient> = self.top.clone();
        let mut cap_rel = Vec::new();
        for (t, e) in self.events.iter().enumerate() {
            match *e {
                GeoEvent::Cup { pos, left } => {
                    if pos > cur_prov.len() {
                        return Err(DiagramError::InvalidEvent { index: t, reason: "cup out of range".into() });
                    }
                    cur_prov.insert(pos, left.flip());
                    cur_prov.insert(pos, left);
                }
                GeoEvent::Cap { pos } => {
                    if pos + 1 >= cur_prov.len() {
                        return Err(DiagramError::InvalidEvent { index: t, reason: "cap out of range".into() });
                    }
                    cap_rel.push(cur_prov[pos] == cur_prov[pos + 1]);
                    cur_prov.drain(pos..pos + 2);
                }
                GeoEvent::Cross { pos, .. } => {
                    if pos + 1 >= cur_prov.len() {
                        return Err(DiagramError::InvalidEvent { index: t, reason: "crossing out of range".into() });
                    }
                    cur_prov.swap(pos, pos + 1);
                }
            }
        }
        let mut cap_iter = cap_rel.into_iter();
        let (piece_cuts, mut uf) = walk_pieces(self.top.len(), &kinds, |t, a, b, uf| {
            let rel = cap_iter.next().unwrap();
            if uf.union(a, b, rel) {
                Ok(())
            } else {
                Err(DiagramError::InvalidEvent { index: t, reason: "inconsistent orientation".into() })
            }
        })?;
        let n_pieces = uf.len();
        // first piece of each component fixes its direction
        let mut comp_of_root = vec![usize::MAX; n_pieces];
        let mut first_parity = vec![false; n_pieces];
        let mut n_comp = 0;
        let mut final_orient = vec![Orient::Down; n_pieces];
        for p in 0..n_pieces {
            let (r, par) = uf.find(p);
            if comp_of_root[r] == usize::MAX {
                comp_of_root[r] = n_comp;
                first_parity[r] = par;
                n_comp += 1;
            }
            let c = comp_of_root[r];
            let flip = (par ^ first_parity[r]) ^ flips.get(c).copied().unwrap_or(false);
            final_orient[p] = if flip { prov[p].flip() } else { prov[p] };
        }
        // replay: per-position orientation from pieces (cup arms alternate)
        let mut top = Vec::with_capacity(self.top.len());
        for &p in &piece_cuts[0] {
            top.push(final_orient[p]);
        }
        let mut cur: Vec<Orient> = top.clone();
        let mut events = Vec::with_capacity(self.events.len());
        let mut next_cup_piece = self.top.len();
        for (t, e) in self.events.iter().enumerate() {
            match *e {
                GeoEvent::Cup { pos, .. } => {
                    let left = final_orient[next_cup_piece];
                    next_cup_piece += 1;
                    cur.insert(pos, left.flip());
                    cur.insert(pos, left);
                    events.push(Event::Cup { pos, left });
                }
                GeoEvent::Cap { pos } => {
                    cur.drain(pos..pos + 2);
                    events.push(Event::Cap { pos });
                }
                GeoEvent::Cross { pos, over } => {
                    let sign = sign_from_geometry(over, cur[pos], cur[pos + 1]);
                    cur.swap(pos, pos + 1);
                    events.push(Event::Cross { pos, sign });
                }
            }
            debug_assert_eq!(cur.len(), piece_cuts[t + 1].len());
        }
        SliceWord::new(top, events, labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Sign;

    #[test]
    fn provisional_conflicts_are_resolved() {
        // the second cup's provisional direction disagrees with the first
        let g = GeoWord::new(
            vec![],
            vec![
                GeoEvent::Cup { pos: 0, left: Orient::Down },
                GeoEvent::Cup { pos: 2, left: Orient::Up },
                GeoEvent::Cap { pos: 1 },
                GeoEvent::Cap { pos: 0 },
            ],
        );
        let s = g.orient().unwrap();
        assert_eq!(s.n_components(), 1);
        assert_eq!(s.events()[1], Event::Cup { pos: 2, left: Orient::Down });
    }

    #[test]
    fn round_trip_through_geometry() {
        let s = SliceWord::closed(vec![
            Event::Cup { pos: 0, left: Orient::Down },
            Event::Cup { pos: 1, left: Orient::Up },
            Event::Cross { pos: 0, sign: Sign::Neg },
            Event::Cross { pos: 1, sign: Sign::Pos },
            Event::Cap { pos: 0 },
            Event::Cap { pos: 0 },
        ]);
        let s = s.unwrap();
        assert_eq!(s.to_geo().orient().unwrap(), s);
    }
}
