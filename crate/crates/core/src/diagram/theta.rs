use serde::{Deserialize, Serialize};

use super::{BraidWord, DiagramError, GeoEvent, GeoWord, Orient, SliceWord, FORMAT_VERSION};

/// A spatial theta-curve presented as a three-strand tangle: edges run from
/// the top vertex `v2` down to the bottom vertex `v1`. Edge `i` leaves the
/// top at position `i` and reaches the bottom at `perm[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTangle {
    tangle: SliceWord,
    perm: [usize; 3],
    edges: [String; 3],
    vertices: [String; 2],
}

#[derive(Serialize, Deserialize)]
struct ThetaRepr {
    format: u32,
    tangle: SliceWord,
    perm: Vec<usize>,
    edges: Vec<String>,
    vertices: Vec<String>,
}

fn default_edges() -> [String; 3] {
    ["e1".into(), "e2".into(), "e3".into()]
}

fn default_vertices() -> [String; 2] {
    ["v1".into(), "v2".into()]
}

impl ThetaTangle {
    pub fn new(tangle: SliceWord) -> Result<Self, DiagramError> {
        if tangle.top() != [Orient::Down; 3] {
            return Err(DiagramError::Invalid("theta tangle needs three downward top endpoints".into()));
        }
        let tr = tangle.trace();
        if tr.n_components != 3 || tr.is_arc.iter().any(|a| !a) || tr.cuts.last().unwrap().len() != 3 {
            return Err(DiagramError::Invalid("theta tangle must consist of exactly three top-to-bottom arcs".into()));
        }
        let mut perm = [0; 3];
        for (p, &c) in tr.cuts.last().unwrap().iter().enumerate() {
            perm[c] = p;
        }
        let tangle = tangle.with_labels(default_edges().to_vec())?;
        Ok(ThetaTangle { tangle, perm, edges: default_edges(), vertices: default_vertices() })
    }

    pub fn trivial() -> Self {
        Self::new(SliceWord::new(vec![Orient::Down; 3], vec![], None).unwrap()).unwrap()
    }

    pub fn from_braid(b: &BraidWord) -> Result<Self, DiagramError> {
        if b.n != 3 {
            return Err(DiagramError::Invalid(format!("theta braid needs 3 strands, got {}", b.n)));
        }
        Self::new(b.to_tangle())
    }

    pub fn tangle(&self) -> &SliceWord {
        &self.tangle
    }

    pub fn perm(&self) -> [usize; 3] {
        self.perm
    }

    pub fn edges(&self) -> &[String; 3] {
        &self.edges
    }

    pub fn vertices(&self) -> &[String; 2] {
        &self.vertices
    }

    pub fn mirror(&self) -> Self {
        Self::new(super::mirror(&self.tangle)).unwrap()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.repr()).unwrap()
    }

    fn repr(&self) -> ThetaRepr {
        ThetaRepr {
            format: FORMAT_VERSION,
            tangle: self.tangle.clone(),
            perm: self.perm.to_vec(),
            edges: self.edges.to_vec(),
            vertices: self.vertices.to_vec(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, DiagramError> {
        let repr: ThetaRepr = serde_json::from_str(text).map_err(|e| DiagramError::Parse(e.to_string()))?;
        Self::from_repr(repr)
    }

    fn from_repr(repr: ThetaRepr) -> Result<Self, DiagramError> {
        if repr.format != FORMAT_VERSION {
            return Err(DiagramError::UnsupportedFormat(repr.format));
        }
        let mut t = Self::new(repr.tangle)?;
        if repr.perm != t.perm {
            return Err(DiagramError::Invalid(format!("stored permutation {:?} disagrees with tangle {:?}", repr.perm, t.perm)));
        }
        t.edges = repr.edges.try_into().map_err(|_| DiagramError::LabelCount { expected: 3, found: 0 })?;
        t.vertices = repr.vertices.try_into().map_err(|_| DiagramError::LabelCount { expected: 2, found: 0 })?;
        t.tangle = t.tangle.with_labels(t.edges.to_vec())?;
        Ok(t)
    }
}

impl Serialize for ThetaTangle {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.repr().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ThetaTangle {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        Self::from_repr(ThetaRepr::deserialize(de)?).map_err(serde::de::Error::custom)
    }
}

/// The constituent knots `[c0, c1, c2]` with `c0 = e1 ∪ e3`, `c1 = e1 ∪ e2`,
/// `c2 = e2 ∪ e3`. Each is closed through the two vertices and oriented
/// along its lower-numbered edge, so the other edge runs upward.
pub fn theta_cycles(t: &ThetaTangle) -> [SliceWord; 3] {
    // edge deleted for each cycle
    let dropped = [1, 2, 0];
    dropped.map(|d| {
        let rest = t.tangle.delete_components(&[d]).unwrap().to_geo();
        let mut events = vec![GeoEvent::Cup { pos: 0, left: Orient::Down }];
        events.extend_from_slice(&rest.events);
        events.push(GeoEvent::Cap { pos: 0 });
        let label = format!("c{}", (d + 2) % 3);
        GeoWord::new(vec![], events).orient_with(&[], Some(vec![label])).unwrap()
    })
}

/// Vertex connected sum: the top vertex of `t1` is joined to the bottom
/// vertex of `t2`, edge to edge, so `t2` is stacked above `t1`.
pub fn vertex_sum(t1: &ThetaTangle, t2: &ThetaTangle) -> Result<ThetaTangle, DiagramError> {
    if t2.perm != [0, 1, 2] {
        return Err(DiagramError::Incompatible(format!(
            "upper tangle permutes its edges ({:?}); edges would not be joined index to index",
            t2.perm
        )));
    }
    let stacked = t2.tangle.concat(&t1.tangle)?;
    let mut out = ThetaTangle::new(stacked)?;
    out.edges = t1.edges.clone();
    out.vertices = [t1.vertices[0].clone(), t2.vertices[1].clone()];
    out.tangle = out.tangle.with_labels(out.edges.to_vec())?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_cycles_are_unknots() {
        let cs = theta_cycles(&ThetaTangle::trivial());
        for (i, c) in cs.iter().enumerate() {
            assert!(c.is_closed());
            assert_eq!(c.n_components(), 1);
            assert_eq!(c.crossing_count(), 0);
            assert_eq!(c.labels()[0], format!("c{i}"));
        }
    }

    #[test]
    fn full_twist_shows_in_c1_only() {
        // one edge of each cycle runs upward, so a positive braid twist on
        // parallel edges becomes a negative twist in the cycle
        let t = ThetaTangle::from_braid(&BraidWord::parse_with_strands("-s1 -s1", Some(3)).unwrap()).unwrap();
        let cs = theta_cycles(&t);
        assert_eq!(cs[1].writhe(), 2);
        assert_eq!(cs[0].crossing_count(), 0);
        assert_eq!(cs[2].crossing_count(), 0);
        let t = ThetaTangle::from_braid(&BraidWord::parse_with_strands("s1 s1", Some(3)).unwrap()).unwrap();
        assert_eq!(theta_cycles(&t)[1].writhe(), -2);
    }

    #[test]
    fn sums_and_json() {
        let a = ThetaTangle::from_braid(&BraidWord::parse("s1 s1 s2 -s1 s2 s2").unwrap()).unwrap();
        let pure = ThetaTangle::from_braid(&BraidWord::parse("s2 s2 -s1 -s1").unwrap()).unwrap();
        assert_eq!(vertex_sum(&ThetaTangle::trivial(), &pure).unwrap(), pure);
        assert_eq!(vertex_sum(&pure, &ThetaTangle::trivial()).unwrap(), pure);
        let s = vertex_sum(&a, &pure).unwrap();
        assert_eq!(s.perm(), a.perm());
        assert_eq!(s.tangle().crossing_count(), 10);
        assert!(vertex_sum(&pure, &a).is_err() || a.perm() == [0, 1, 2]);
        let back = ThetaTangle::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        let odd = ThetaTangle::from_braid(&BraidWord::parse("s1").unwrap());
        assert!(odd.is_err());
        assert!(ThetaTangle::new(SliceWord::unknot()).is_err());
    }
}
