//! Disk/band surfaces of theta-curves: ribbon thickenings with band twists,
//! Seifert pairings from explicit pushoffs, the canonical surface with
//! prescribed pairing, and boundary links.
//!
//! Conventions. Boundary cycles are `c1 = e1 ∪ e2` and `c2 = e2 ∪ e3`, the
//! outer cycle is `c0 = e1 ∪ e3`, each oriented along its lower-numbered edge.
//! The positive side of the surface faces the viewer. A positive full twist
//! of a band is the positive full twist of its parallel downward lines.
//! Boundary components are labeled `1` (around the face of `c1`), `2` (face of
//! `c2`) and `3` (outer), and oriented so that the left side of each band runs
//! downward.

mod ribbon;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::classical::{linking_number, ClassicalError};
use crate::diagram::{slice_to_pd, DiagramError, LinkDiagram, SliceWord, ThetaTangle, FORMAT_VERSION};
use ribbon::{draw, BottomArcs, Line, RibbonPlan};

#[derive(Debug, Clone, thiserror::Error)]
pub enum SurfaceError {
    #[error("surface is not orientable")]
    NonOrientable,
    #[error("invalid surface data: {0}")]
    Invalid(String),
    #[error("no linking number supplied for disjoint cycles {0} and {1}")]
    MissingLinking(usize, usize),
    #[error("twist system: {0}")]
    TwistSystem(String),
    #[error("internal ribbon error: {0}")]
    Internal(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
}

/// A theta-curve thickened to a disk/band surface: a disk at each vertex and
/// one band per edge, carrying extra full twists and a half-twist flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonSurface {
    core: ThetaTangle,
    twists: [i64; 3],
    half: [i8; 3],
}

#[derive(Serialize, Deserialize)]
struct SurfaceRepr {
    format: u32,
    core: ThetaTangle,
    twists: [i64; 3],
    half: [i8; 3],
}

impl RibbonSurface {
    pub fn new(core: ThetaTangle, twists: [i64; 3], half: [i8; 3]) -> Result<Self, SurfaceError> {
        if half.iter().any(|h| h.abs() > 1) {
            return Err(SurfaceError::Invalid(format!("half-twist flags {half:?} must lie in -1..=1")));
        }
        Ok(RibbonSurface { core, twists, half })
    }

    pub fn core(&self) -> &ThetaTangle {
        &self.core
    }

    pub fn twists(&self) -> [i64; 3] {
        self.twists
    }

    pub fn half_twists(&self) -> [i8; 3] {
        self.half
    }

    /// Every cycle crosses two bands, so the surface is orientable exactly
    /// when all bands have half twists of the same parity.
    pub fn is_orientable(&self) -> bool {
        self.half.iter().all(|&h| (h != 0) == (self.half[0] != 0))
    }

    pub fn to_json(&self) -> String {
        let repr = SurfaceRepr { format: FORMAT_VERSION, core: self.core.clone(), twists: self.twists, half: self.half };
        serde_json::to_string_pretty(&repr).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        let repr: SurfaceRepr = serde_json::from_str(text).map_err(|e| DiagramError::Parse(e.to_string()))?;
        if repr.format != FORMAT_VERSION {
            return Err(DiagramError::UnsupportedFormat(repr.format).into());
        }
        Self::new(repr.core, repr.twists, repr.half)
    }
}

/// Seifert pairing `⟨c_i, c_j⟩ = lk(c_i, c_j⁺)` on the named cycles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertMatrix {
    pub cycles: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn zero(cycles: Vec<String>) -> Self {
        let n = cycles.len();
        SeifertMatrix { cycles, entries: vec![vec![0; n]; n] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|&x| x == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.entries.len();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

/// The pairing prescribed for the canonical surface. `meets[i][j]` says
/// whether cycles `c_i` and `c_j` share a point, with `c_0` the outermost
/// cycle; `linking` holds `lk(c_i, c_j)` for disjoint pairs, under either key
/// order. The result is indexed by `c_1, ..., c_n`.
pub fn target_pairing(meets: &[Vec<bool>], linking: &BTreeMap<(usize, usize), i64>) -> Result<SeifertMatrix, SurfaceError> {
    let m = meets.len();
    if m == 0 || meets.iter().any(|r| r.len() != m) {
        return Err(SurfaceError::Invalid("incidence must be a square matrix including c0".into()));
    }
    if (0..m).any(|i| !meets[i][i] || (0..m).any(|j| meets[i][j] != meets[j][i])) {
        return Err(SurfaceError::Invalid("incidence must be symmetric and reflexive".into()));
    }
    let lk = |i: usize, j: usize| {
        linking.get(&(i, j)).or_else(|| linking.get(&(j, i))).copied().ok_or(SurfaceError::MissingLinking(i, j))
    };
    let mut out = SeifertMatrix::zero((1..m).map(|i| format!("c{i}")).collect());
    for i in 1..m {
        for j in 1..m {
            out.entries[i - 1][j - 1] = if !meets[i][j] {
                lk(i, j)?
            } else if i != j || meets[i][0] {
                0
            } else {
                let mut d = -lk(i, 0)?;
                for k in (1..m).filter(|&k| !meets[i][k]) {
                    d -= lk(i, k)?;
                }
                d
            };
        }
    }
    Ok(out)
}

/// Cycle incidence of the theta graph: every two cycles share an edge.
pub fn theta_incidence() -> Vec<Vec<bool>> {
    vec![vec![true; 3]; 3]
}

pub(crate) fn odd_permutation(p: [usize; 3]) -> bool {
    (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count() % 2 == 1
}

/// Edges of `c0`, `c1`, `c2`, lower-numbered edge first.
const CYCLE_EDGES: [[usize; 2]; 3] = [[0, 2], [0, 1], [1, 2]];

/// The ribbon thickening of the theta diagram, with no extra twists.
pub fn blackboard_surface(t: &ThetaTangle) -> RibbonSurface {
    RibbonSurface { core: t.clone(), twists: [0; 3], half: [0; 3] }
}

/// `lk(c_i, c_j⁺)` for boundary cycles `i, j ∈ {1, 2}`: the curve `c_i` on
/// the surface and the pushoff of `c_j` drawn as a second layer above it.
fn pushoff_linking(s: &RibbonSurface, i: usize, j: usize) -> Result<i64, SurfaceError> {
    let mut lines = Vec::new();
    let mut bands: [Vec<usize>; 3] = Default::default();
    let mut arcs = Vec::new();
    for (layer, c) in [(0u8, i), (1, j)] {
        let [lo, hi] = CYCLE_EDGES[c];
        let (a, b) = (lines.len(), lines.len() + 1);
        lines.push(Line { layer, down_at_top: true });
        lines.push(Line { layer, down_at_top: false });
        bands[lo].push(a);
        bands[hi].push(b);
        arcs.push((a, b));
    }
    let plan = RibbonPlan { lines, bands, top_arcs: arcs.clone(), bottom: BottomArcs::Explicit(arcs) };
    let sw = draw(s, &plan)?.geo.orient()?;
    if sw.n_components() != 2 {
        return Err(SurfaceError::Internal(format!("pushoff diagram has {} components", sw.n_components())));
    }
    Ok(linking_number(&slice_to_pd(&sw)?, 0, 1)?)
}

/// The Seifert pairing on `c1, c2`, computed from pushoff diagrams.
pub fn seifert_pairing(s: &RibbonSurface) -> Result<SeifertMatrix, SurfaceError> {
    if !s.is_orientable() {
        return Err(SurfaceError::NonOrientable);
    }
    let mut m = SeifertMatrix::zero(vec!["c1".into(), "c2".into()]);
    for i in 0..2 {
        for j in 0..2 {
            m.entries[i][j] = pushoff_linking(s, i + 1, j + 1)?;
        }
    }
    Ok(m)
}

/// Adds `x[e]` full twists and a `y[e]`-signed half twist to band `e`. Two
/// half twists of the same sign merge into a full twist.
pub fn modify_surface(s: &RibbonSurface, x: [i64; 3], y: [i8; 3]) -> Result<RibbonSurface, SurfaceError> {
    if y.iter().any(|h| h.abs() > 1) {
        return Err(SurfaceError::Invalid(format!("half-twist flags {y:?} must lie in -1..=1")));
    }
    let mut out = s.clone();
    for e in 0..3 {
        out.twists[e] += x[e];
        let h = out.half[e] + y[e];
        if h.abs() == 2 {
            out.twists[e] += i64::from(h.signum());
            out.half[e] = 0;
        } else {
            out.half[e] = h;
        }
    }
    Ok(out)
}

fn det3(a: &[[i64; 3]; 3]) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Entries `(c1,c1)`, `(c2,c2)`, `(c1,c2)` that determine the twist system.
fn key_entries(m: &SeifertMatrix) -> [i64; 3] {
    [m.entries[0][0], m.entries[1][1], m.entries[0][1]]
}

/// The disk/band surface whose Seifert pairing is the prescribed one (zero
/// for a theta-curve). Band twists are found by measuring the effect of a
/// unit twist on each band and solving the resulting integer system, which
/// must have exactly one solution.
pub fn canonical_surface(t: &ThetaTangle) -> Result<RibbonSurface, SurfaceError> {
    let base = blackboard_surface(t);
    let m0 = key_entries(&seifert_pairing(&base)?);
    let mut a = [[0i64; 3]; 3];
    for e in 0..3 {
        let mut x = [0; 3];
        x[e] = 1;
        let me = key_entries(&seifert_pairing(&modify_surface(&base, x, [0; 3])?)?);
        for r in 0..3 {
            a[r][e] = me[r] - m0[r];
        }
    }
    let target = target_pairing(&theta_incidence(), &BTreeMap::new())?;
    let rhs: Vec<i64> = key_entries(&target).iter().zip(m0).map(|(t, m)| t - m).collect();
    let d = det3(&a);
    if d == 0 {
        return Err(SurfaceError::TwistSystem(format!("singular twist effects {a:?}")));
    }
    let mut twists = [0i64; 3];
    for (e, tw) in twists.iter_mut().enumerate() {
        let mut ae = a;
        for r in 0..3 {
            ae[r][e] = rhs[r];
        }
        let n = det3(&ae);
        if n % d != 0 {
            return Err(SurfaceError::TwistSystem(format!("no integer solution ({n}/{d})")));
        }
        *tw = n / d;
    }
    let s = modify_surface(&base, twists, [0; 3])?;
    let check = seifert_pairing(&s)?;
    if check.entries != target.entries {
        return Err(SurfaceError::TwistSystem(format!("corrected pairing is {:?}", check.entries)));
    }
    Ok(s)
}

const BOUNDARY_LABELS: [&str; 3] = ["1", "2", "3"];

/// The boundary as a slice word, with components in canonical order. See
/// [`boundary_link`] for the ordered version.
pub fn boundary_diagram(s: &RibbonSurface) -> Result<SliceWord, SurfaceError> {
    Ok(boundary_parts(s)?.0)
}

/// Boundary components, each tagged with the sorted top arcs it contains.
fn boundary_parts(s: &RibbonSurface) -> Result<(SliceWord, Vec<Vec<usize>>), SurfaceError> {
    let mut lines = Vec::new();
    let mut bands: [Vec<usize>; 3] = Default::default();
    for band in bands.iter_mut() {
        let l = lines.len();
        lines.push(Line { layer: 0, down_at_top: true });
        lines.push(Line { layer: 0, down_at_top: false });
        *band = vec![l, l + 1];
    }
    // right side of e1 to left side of e2, e2 to e3, and the outer arc
    let top_arcs = vec![(1, 2), (3, 4), (0, 5)];
    let plan = RibbonPlan { lines, bands, top_arcs, bottom: BottomArcs::Boundary };
    let drawn = draw(s, &plan)?;
    let geo = drawn.geo;
    let unlabeled = geo.orient()?;
    let tr = unlabeled.trace();
    let mut arcs_of = vec![Vec::new(); unlabeled.n_components()];
    for (arc, &t) in drawn.top_cups.iter().enumerate() {
        let pos = geo.events[t].pos();
        arcs_of[tr.cuts[t + 1][pos]].push(arc);
    }
    let labels = arcs_of.iter().map(|a| a.iter().map(|&k| BOUNDARY_LABELS[k]).collect::<Vec<_>>().join("+")).collect();
    Ok((geo.orient_with(&[], Some(labels))?, arcs_of))
}

/// The ordered, oriented, labeled boundary link. Components are ordered by
/// label.
pub fn boundary_link(s: &RibbonSurface) -> Result<LinkDiagram, SurfaceError> {
    let (sw, arcs_of) = boundary_parts(s)?;
    let mut order: Vec<usize> = (0..arcs_of.len()).collect();
    order.sort_by_key(|&c| arcs_of[c][0]);
    Ok(slice_to_pd(&sw)?.reordered(&order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::linking_matrix;
    use crate::diagram::{theta_cycles, vertex_sum, BraidWord, GeoEvent, GeoWord, Orient, Over};

    fn theta(gens: &[i32]) -> ThetaTangle {
        ThetaTangle::from_braid(&BraidWord::new(3, gens.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn target_cases() {
        assert!(target_pairing(&theta_incidence(), &BTreeMap::new()).unwrap().is_zero());
        // c1 disjoint from everything, all lk zero
        let mut meets = vec![vec![true; 3]; 3];
        meets[1] = vec![false, true, false];
        meets[0][1] = false;
        meets[2][1] = false;
        let zero_lk: BTreeMap<_, _> = [((1, 0), 0), ((1, 2), 0)].into();
        assert!(target_pairing(&meets, &zero_lk).unwrap().is_zero());
        let lk: BTreeMap<_, _> = [((0, 1), 2), ((2, 1), 3)].into();
        let m = target_pairing(&meets, &lk).unwrap();
        assert_eq!(m.entries, vec![vec![-5, 3], vec![3, 0]]);
        assert!(matches!(target_pairing(&meets, &BTreeMap::new()), Err(SurfaceError::MissingLinking(..))));
    }

    #[test]
    fn trivial_theta() {
        let s = blackboard_surface(&ThetaTangle::trivial());
        assert!(seifert_pairing(&s).unwrap().is_zero());
        assert_eq!(canonical_surface(&ThetaTangle::trivial()).unwrap().twists(), [0; 3]);
        let b = boundary_link(&s).unwrap();
        assert_eq!(b.labels(), ["1", "2", "3"]);
        assert!(b.crossings().is_empty());
    }

    #[test]
    fn pairing_counts_cycle_writhe() {
        let t = theta(&[-1, -1]);
        assert_eq!(theta_cycles(&t)[1].writhe(), 2);
        let m = seifert_pairing(&blackboard_surface(&t)).unwrap();
        assert_eq!(m.entries[0][0], 2);
        assert!(m.is_symmetric());
    }

    #[test]
    fn twist_effects() {
        let t = theta(&[1, -2, 1, 2, 2]);
        let base = blackboard_surface(&t);
        let m0 = seifert_pairing(&base).unwrap();
        let diff = |x: [i64; 3]| {
            let m = seifert_pairing(&modify_surface(&base, x, [0; 3]).unwrap()).unwrap();
            let mut d = m.entries.clone();
            for i in 0..2 {
                for j in 0..2 {
                    d[i][j] -= m0.entries[i][j];
                }
            }
            d
        };
        assert_eq!(diff([1, 0, 0]), vec![vec![1, 0], vec![0, 0]]);
        assert_eq!(diff([0, 0, 1]), vec![vec![0, 0], vec![0, 1]]);
        let d2 = diff([0, 1, 0]);
        assert!(d2.iter().flatten().all(|x| x.abs() == 1), "{d2:?}");
    }

    #[test]
    fn canonical_is_zero() {
        for gens in [vec![], vec![1, 1], vec![-1, -1], vec![1, 2, 1, 2, -1], vec![2, 2, 2, 1, -2, -1]] {
            let t = theta(&gens);
            let s = canonical_surface(&t).unwrap();
            assert!(seifert_pairing(&s).unwrap().is_zero(), "{gens:?}");
            let b = boundary_link(&s).unwrap();
            assert_eq!(b.n_components(), 3);
            assert_eq!(b.labels(), ["1", "2", "3"]);
        }
        // a core with a zigzag on e1 exercises cabled cups and caps
        let zig = GeoWord::new(
            vec![Orient::Down; 3],
            vec![
                GeoEvent::Cup { pos: 1, left: Orient::Up },
                GeoEvent::Cross { pos: 2, over: Over::Left },
                GeoEvent::Cross { pos: 2, over: Over::Left },
                GeoEvent::Cap { pos: 0 },
                GeoEvent::Cross { pos: 0, over: Over::Right },
            ],
        );
        let t = ThetaTangle::new(zig.orient().unwrap()).unwrap();
        let s = canonical_surface(&t).unwrap();
        assert!(seifert_pairing(&s).unwrap().is_zero());
        assert_eq!(boundary_link(&s).unwrap().n_components(), 3);
        let (t1, t2) = (theta(&[1, 2, -1, 2]), theta(&[2, 2, 1, 1]));
        let sum = vertex_sum(&t1, &t2).unwrap();
        assert!(seifert_pairing(&canonical_surface(&sum).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn modification_and_json() {
        let s = canonical_surface(&theta(&[1, 2, 1])).unwrap();
        assert_eq!(modify_surface(&s, [0; 3], [0; 3]).unwrap(), s);
        let m = modify_surface(&s, [1, 1, -1], [0, 0, 1]).unwrap();
        assert!(!m.is_orientable());
        assert!(seifert_pairing(&m).is_err());
        assert_eq!(boundary_link(&m).unwrap(), boundary_link(&modify_surface(&s, [1, 1, -1], [0, 0, 1]).unwrap()).unwrap());
        let twice = modify_surface(&m, [0; 3], [0, 0, 1]).unwrap();
        assert_eq!(twice.twists()[2], s.twists()[2] - 1 + 1);
        assert_eq!(twice.half_twists(), [0; 3]);
        assert_eq!(RibbonSurface::from_json(&m.to_json()).unwrap(), m);
        assert!(modify_surface(&s, [0; 3], [2, 0, 0]).is_err());
    }

    #[test]
    fn boundary_counts_follow_half_twists() {
        let s = blackboard_surface(&theta(&[1, 2, -1]));
        for y in itertools::iproduct!(-1i8..=1, -1i8..=1, -1i8..=1) {
            let y = [y.0, y.1, y.2];
            let odd = y.iter().filter(|&&h| h != 0).count();
            let b = boundary_diagram(&modify_surface(&s, [0; 3], y).unwrap()).unwrap();
            // Euler characteristic -1: orientable with three odd bands is a
            // punctured torus
            assert_eq!(b.n_components(), [3, 2, 1, 1][odd], "{y:?}");
        }
        // a single half twist joins the two faces along its band
        for (e, joined) in ["1+3", "1+2", "2+3"].iter().enumerate() {
            let mut y = [0; 3];
            y[e] = 1;
            let b = boundary_link(&modify_surface(&s, [0; 3], y).unwrap()).unwrap();
            assert!(b.labels().contains(&joined.to_string()), "{:?}", b.labels());
        }
    }

    #[test]
    fn canonical_boundary_is_unlinked_for_trivial_core() {
        let b = boundary_link(&canonical_surface(&ThetaTangle::trivial()).unwrap()).unwrap();
        assert!(linking_matrix(&b).iter().flatten().all(|&x| x == 0));
    }
}
