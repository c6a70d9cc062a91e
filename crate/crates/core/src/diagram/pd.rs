use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::slice::UnionFind;
use super::{over_strand, DiagramError, Event, Orient, Over, Sign, SliceWord, FORMAT_VERSION};

/// A crossing as four edge ids listed counterclockwise starting from the
/// incoming under-edge. The crossing is positive iff the last slot is the
/// incoming over-edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PdCrossing {
    pub slots: [usize; 4],
    pub sign: Sign,
}

impl PdCrossing {
    pub fn incoming_over(&self) -> usize {
        match self.sign {
            Sign::Pos => self.slots[3],
            Sign::Neg => self.slots[1],
        }
    }

    pub fn outgoing_over(&self) -> usize {
        match self.sign {
            Sign::Pos => self.slots[1],
            Sign::Neg => self.slots[3],
        }
    }
}

/// Planar-diagram form of an oriented link. Each component is the cyclic
/// list of its edge ids in traversal order; a crossingless component has a
/// single edge that appears in no crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<PdCrossing>,
    components: Vec<Vec<usize>>,
    labels: Vec<String>,
}

/// Passages through crossings along one component: `(crossing, is_over)`.
pub type GaussCode = Vec<(usize, bool)>;

#[derive(Serialize, Deserialize)]
struct LinkDiagramRepr {
    format: u32,
    crossings: Vec<PdCrossing>,
    components: Vec<Vec<usize>>,
    labels: Vec<String>,
}

impl LinkDiagram {
    pub fn new(crossings: Vec<PdCrossing>, components: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self, DiagramError> {
        let d = LinkDiagram { crossings, components, labels };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let bad = |m: String| Err(DiagramError::Invalid(m));
        if self.labels.len() != self.components.len() {
            return Err(DiagramError::LabelCount { expected: self.components.len(), found: self.labels.len() });
        }
        let mut slot_count: HashMap<usize, usize> = HashMap::new();
        for c in &self.crossings {
            for &e in &c.slots {
                *slot_count.entry(e).or_default() += 1;
            }
        }
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            if comp.is_empty() {
                return bad(format!("component {ci} has no edges"));
            }
            for &e in comp {
                if seen.insert(e, ci).is_some() {
                    return bad(format!("edge {e} listed twice"));
                }
                let n = slot_count.get(&e).copied().unwrap_or(0);
                let expect = if comp.len() == 1 && n == 0 { 0 } else { 2 };
                if n != expect {
                    return bad(format!("edge {e} appears {n} times in crossings"));
                }
            }
        }
        if slot_count.keys().any(|e| !seen.contains_key(e)) {
            return bad("crossing edge missing from components".into());
        }
        // consecutive edges must pass through a crossing, under a->c or
        // along the over strand in the direction the sign dictates
        let mut passes = vec![0u8; self.crossings.len()];
        for comp in &self.components {
            if comp.len() == 1 && !slot_count.contains_key(&comp[0]) {
                continue;
            }
            for k in 0..comp.len() {
                let (e, f) = (comp[k], comp[(k + 1) % comp.len()]);
                let hit = self.crossings.iter().enumerate().find(|(i, c)| {
                    let under = c.slots[0] == e && c.slots[2] == f && passes[*i] & 1 == 0;
                    let over = c.incoming_over() == e && c.outgoing_over() == f && passes[*i] & 2 == 0;
                    under || over
                });
                match hit {
                    Some((i, c)) => {
                        passes[i] |= if c.slots[0] == e && c.slots[2] == f && passes[i] & 1 == 0 { 1 } else { 2 };
                    }
                    None => return bad(format!("no crossing takes edge {e} to edge {f}")),
                }
            }
        }
        if passes.iter().any(|&p| p != 3) {
            return bad("crossing not traversed exactly once over and once under".into());
        }
        Ok(())
    }

    pub fn crossings(&self) -> &[PdCrossing] {
        &self.crossings
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    /// The same diagram with components listed in the order `order[0], order[1], ...`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self, DiagramError> {
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..self.components.len()).collect::<Vec<_>>() {
            return Err(DiagramError::Invalid(format!("{order:?} is not a permutation of the components")));
        }
        let components = order.iter().map(|&i| self.components[i].clone()).collect();
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(LinkDiagram { crossings: self.crossings.clone(), components, labels })
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    pub fn edge_component(&self) -> HashMap<usize, usize> {
        let mut m = HashMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for &e in comp {
                m.insert(e, ci);
            }
        }
        m
    }

    /// Components of the (over, under) strands of each crossing.
    pub fn crossing_components(&self) -> Vec<(usize, usize)> {
        let ec = self.edge_component();
        self.crossings.iter().map(|c| (ec[&c.incoming_over()], ec[&c.slots[0]])).collect()
    }

    /// Gauss code of a component, starting at its first listed edge.
    pub fn gauss_code(&self, comp: usize) -> GaussCode {
        let mut under_in: HashMap<usize, usize> = HashMap::new();
        let mut over_in: HashMap<usize, usize> = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            under_in.insert(c.slots[0], i);
            over_in.insert(c.incoming_over(), i);
        }
        let mut code = Vec::new();
        for &e in &self.components[comp] {
            // an edge ends at exactly one crossing, as under or over
            if let Some(&i) = under_in.get(&e) {
                code.push((i, false));
            } else if let Some(&i) = over_in.get(&e) {
                code.push((i, true));
            }
        }
        code
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.repr()).unwrap()
    }

    fn repr(&self) -> LinkDiagramRepr {
        LinkDiagramRepr {
            format: FORMAT_VERSION,
            crossings: self.crossings.clone(),
            components: self.components.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let r: LinkDiagramRepr = serde_json::from_str(text).map_err(|e| DiagramError::Parse(e.to_string()))?;
        if r.format != FORMAT_VERSION {
            return Err(DiagramError::UnsupportedFormat(r.format));
        }
        LinkDiagram::new(r.crossings, r.components, r.labels)
    }
}

impl Serialize for LinkDiagram {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.repr().serialize(ser)
    }
}

/// Planar-diagram code of a closed slice word, with the same component
/// order, labels and crossing signs. Crossing `i` of the result is the
/// `i`-th crossing event.
pub fn slice_to_pd(s: &SliceWord) -> Result<LinkDiagram, DiagramError> {
    if !s.is_closed() {
        return Err(DiagramError::NotClosed);
    }
    let tr = s.trace();
    let widths = s.widths();
    let mut offset = Vec::with_capacity(widths.len());
    let mut acc = 0;
    for &w in &widths {
        offset.push(acc);
        acc += w;
    }
    let seg = |t: usize, p: usize| offset[t] + p;
    let mut uf = UnionFind::new();
    for _ in 0..acc {
        uf.add();
    }
    // (crossing index, [TL, TR, BL, BR] segments, over strand, orientations)
    let mut xs: Vec<([usize; 4], Over, Orient, Orient, Sign)> = Vec::new();
    for (t, e) in s.events().iter().enumerate() {
        let n = widths[t];
        match *e {
            Event::Cup { pos, .. } => {
                for p in 0..n {
                    let q = if p < pos { p } else { p + 2 };
                    uf.union(seg(t, p), seg(t + 1, q), false);
                }
                uf.union(seg(t + 1, pos), seg(t + 1, pos + 1), false);
            }
            Event::Cap { pos } => {
                for p in 0..n {
                    if p < pos {
                        uf.union(seg(t, p), seg(t + 1, p), false);
                    } else if p >= pos + 2 {
                        uf.union(seg(t, p), seg(t + 1, p - 2), false);
                    }
                }
                uf.union(seg(t, pos), seg(t, pos + 1), false);
            }
            Event::Cross { pos, sign } => {
                for p in 0..n {
                    if p != pos && p != pos + 1 {
                        uf.union(seg(t, p), seg(t + 1, p), false);
                    }
                }
                let (ol, or) = (tr.orients[t][pos], tr.orients[t][pos + 1]);
                let over = over_strand(sign, ol, or);
                xs.push(([seg(t, pos), seg(t, pos + 1), seg(t + 1, pos), seg(t + 1, pos + 1)], over, ol, or, sign));
            }
        }
    }
    let root = |uf: &mut UnionFind, x: usize| uf.find(x).0;
    // for each crossing and strand (0 = left/TL-BR, 1 = right/TR-BL):
    // incoming and outgoing segment
    let mut strand_io: Vec<[(usize, usize); 2]> = Vec::new();
    let mut into: HashMap<usize, (usize, usize)> = HashMap::new();
    for (i, (sg, _, ol, or, _)) in xs.iter().enumerate() {
        let s1 = if *ol == Orient::Down { (sg[0], sg[3]) } else { (sg[3], sg[0]) };
        let s2 = if *or == Orient::Down { (sg[1], sg[2]) } else { (sg[2], sg[1]) };
        let s1 = (root(&mut uf, s1.0), root(&mut uf, s1.1));
        let s2 = (root(&mut uf, s2.0), root(&mut uf, s2.1));
        into.insert(s1.0, (i, 0));
        into.insert(s2.0, (i, 1));
        strand_io.push([s1, s2]);
    }
    // traverse each component from its first segment
    let mut edge_id: HashMap<usize, usize> = HashMap::new();
    let mut components = vec![Vec::new(); tr.n_components];
    let mut next = 1;
    for comp in 0..tr.n_components {
        let start_seg = (0..tr.cuts.len())
            .find_map(|t| tr.cuts[t].iter().position(|&c| c == comp).map(|p| seg(t, p)))
            .unwrap();
        let start = root(&mut uf, start_seg);
        // walk backwards is unnecessary: number classes as met going forward
        let mut cls = start;
        loop {
            edge_id.insert(cls, next);
            components[comp].push(next);
            next += 1;
            match into.get(&cls) {
                None => break,
                Some(&(i, st)) => {
                    let out = strand_io[i][st].1;
                    if out == start {
                        break;
                    }
                    cls = out;
                }
            }
        }
    }
    let mut crossings = Vec::with_capacity(xs.len());
    for (i, (_, over, _, _, sign)) in xs.iter().enumerate() {
        let under = match over {
            Over::Left => 1,
            Over::Right => 0,
        };
        let ov = 1 - under;
        // counterclockwise cyclic order of the corners: TR, TL, BL, BR
        let [s1, s2] = strand_io[i];
        let corner = |st: usize, incoming: bool| -> usize {
            let (inn, out) = if st == 0 { s1 } else { s2 };
            let cls = if incoming { inn } else { out };
            edge_id[&cls]
        };
        // which corner each end sits at
        let (_, _, ol, or, _) = xs[i];
        let s1_in_corner = if ol == Orient::Down { 1 } else { 3 }; // TL or BR in ccw list
        let s2_in_corner = if or == Orient::Down { 0 } else { 2 }; // TR or BL
        let mut ring = [0usize; 4];
        ring[s1_in_corner] = corner(0, true);
        ring[(s1_in_corner + 2) % 4] = corner(0, false);
        ring[s2_in_corner] = corner(1, true);
        ring[(s2_in_corner + 2) % 4] = corner(1, false);
        let under_in_corner = if under == 0 { s1_in_corner } else { s2_in_corner };
        let slots = [0, 1, 2, 3].map(|k| ring[(under_in_corner + k) % 4]);
        let pd = PdCrossing { slots, sign: *sign };
        debug_assert_eq!(pd.incoming_over(), corner(ov, true));
        crossings.push(pd);
    }
    LinkDiagram::new(crossings, components, s.labels().to_vec())
}
