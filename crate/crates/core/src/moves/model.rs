use serde::{Deserialize, Serialize};

use crate::diagram::{BraidWord, DiagramError, Event, GeoEvent, Over, SliceWord};

/// Largest order served by [`ck_model`].
pub const MAX_MODEL_ORDER: usize = 6;

#[derive(Debug, Clone, thiserror::Error)]
pub enum MoveError {
    #[error("invalid move site: {0}")]
    InvalidSite(String),
    #[error("unsupported model order {0}")]
    Order(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A C_k link model: `alpha` is a pure braid on `k + 1` downward strands and
/// `beta` joins top endpoint `i` to bottom endpoint `i` outside the ball, so
/// that `alpha` and `beta` close up to `k + 1` circles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkModel {
    k: usize,
    alpha: BraidWord,
    beta: Vec<(usize, usize)>,
}

/// The pure braid generator linking strands `i < j` (0-based).
fn linker(n: usize, i: usize, j: usize) -> Vec<i32> {
    let mut w: Vec<i32> = (i + 2..=j).rev().map(|g| g as i32).collect();
    w.extend([i as i32 + 1, i as i32 + 1]);
    w.extend((i + 2..=j).map(|g| -(g as i32)));
    debug_assert!(w.iter().all(|g| (g.unsigned_abs() as usize) < n));
    w
}

fn inverse(w: &[i32]) -> Vec<i32> {
    w.iter().rev().map(|g| -g).collect()
}

fn commutator(a: &[i32], b: &[i32]) -> Vec<i32> {
    [a, b, &inverse(a), &inverse(b)].concat()
}

impl LinkModel {
    pub fn order(&self) -> usize {
        self.k
    }

    pub fn arcs(&self) -> usize {
        self.k + 1
    }

    pub fn alpha(&self) -> &BraidWord {
        &self.alpha
    }

    pub fn beta(&self) -> &[(usize, usize)] {
        &self.beta
    }

    /// `alpha` closed up by `beta`.
    pub fn closure(&self) -> SliceWord {
        crate::diagram::braid_closure(&self.alpha)
    }

    fn from_word(k: usize, gens: Vec<i32>) -> Self {
        let alpha = BraidWord::new(k + 1, gens).expect("generators in range");
        debug_assert!(alpha.permutation().iter().enumerate().all(|(i, &p)| i == p));
        LinkModel { k, alpha, beta: (0..=k).map(|i| (i, i)).collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, MoveError> {
        let m: LinkModel = serde_json::from_str(text).map_err(|e| DiagramError::Parse(e.to_string()))?;
        let pure = m.alpha.permutation().iter().enumerate().all(|(i, &p)| i == p);
        if m.alpha.n != m.k + 1 || !pure || m.beta != (0..=m.k).map(|i| (i, i)).collect::<Vec<_>>() {
            return Err(MoveError::InvalidSite("malformed link model".into()));
        }
        Ok(m)
    }
}

/// The clasp: two strands with a full twist, closing to the Hopf link.
pub fn c1_model() -> LinkModel {
    LinkModel::from_word(1, linker(2, 0, 1))
}

/// Doubles component `comp`: a new strand is added on the right and the
/// model becomes the commutator of the old braid with the generator linking
/// `comp` to the new strand.
pub fn double(m: &LinkModel, comp: usize) -> Result<LinkModel, MoveError> {
    if comp > m.k {
        return Err(MoveError::InvalidSite(format!("component {comp} of a model with {} arcs", m.k + 1)));
    }
    let n = m.k + 2;
    Ok(LinkModel::from_word(m.k + 1, commutator(&m.alpha.gens, &linker(n, comp, n - 1))))
}

/// Canonical C_k model: the clasp doubled `k - 1` times, always on the
/// newest component.
pub fn ck_model(k: usize) -> Result<LinkModel, MoveError> {
    if k == 0 || k > MAX_MODEL_ORDER {
        return Err(MoveError::Order(k));
    }
    let mut m = c1_model();
    while m.k < k {
        let newest = m.k;
        m = double(&m, newest)?;
    }
    Ok(m)
}

/// Where a model is attached: before event `cut`, model strand `i` is laid
/// along the host strand at position `strands[i]`. Strands are gathered next
/// to the first one; `over[i - 1]` says whether strand `i` passes over the
/// strands it crosses on the way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSite {
    pub cut: usize,
    pub strands: Vec<usize>,
    #[serde(default)]
    pub over: Vec<bool>,
    /// Attach the mirror image of the model.
    #[serde(default)]
    pub mirror: bool,
}

impl MoveSite {
    pub fn new(cut: usize, strands: Vec<usize>) -> Self {
        let over = vec![true; strands.len().saturating_sub(1)];
        MoveSite { cut, strands, over, mirror: false }
    }
}

/// Geometric crossings of a braid word on downward strands.
fn braid_geometry(gens: &[i32], offset: usize, mirror: bool) -> Vec<GeoEvent> {
    gens.iter()
        .map(|&g| {
            // a positive generator on downward strands has the right strand over
            let over = if (g > 0) != mirror { Over::Right } else { Over::Left };
            GeoEvent::Cross { pos: offset + g.unsigned_abs() as usize - 1, over }
        })
        .collect()
}

/// Band sum of a link model onto the host: the strands named by the site
/// are brought together, the model's braid is inserted on them, and they are
/// taken back along the same route.
pub fn band_sum(host: &SliceWord, m: &LinkModel, site: &MoveSite) -> Result<SliceWord, MoveError> {
    let geo = host.to_geo();
    if site.cut > geo.events.len() {
        return Err(MoveError::InvalidSite(format!("cut {} beyond {} events", site.cut, geo.events.len())));
    }
    if site.strands.len() != m.arcs() {
        return Err(MoveError::InvalidSite(format!("{} strands for a model with {} arcs", site.strands.len(), m.arcs())));
    }
    if site.over.len() + 1 != site.strands.len() {
        return Err(MoveError::InvalidSite("one routing flag per gathered strand is needed".into()));
    }
    let width = host.trace().orients[site.cut].len();
    let mut seen = vec![false; width];
    for &p in &site.strands {
        if p >= width || std::mem::replace(&mut seen[p], true) {
            return Err(MoveError::InvalidSite(format!("strand {p} is missing or repeated at a cut of width {width}")));
        }
    }
    // gather: at[i] is the current position of model strand i
    let mut at = site.strands.clone();
    let mut route = Vec::new();
    for i in 1..at.len() {
        while at[i] != at[i - 1] + 1 {
            let moving_left = at[i] > at[i - 1];
            let pos = if moving_left { at[i] - 1 } else { at[i] };
            // the moving strand is the right one of the crossing when it moves left
            let over = if moving_left == site.over[i - 1] { Over::Right } else { Over::Left };
            route.push(GeoEvent::Cross { pos, over });
            for x in at.iter_mut() {
                if *x == pos {
                    *x = pos + 1;
                } else if *x == pos + 1 {
                    *x = pos;
                }
            }
        }
    }
    let start = *at.iter().min().expect("nonempty site");
    debug_assert!(at.iter().enumerate().all(|(i, &p)| p == start + i));
    let mut inserted = route.clone();
    inserted.extend(braid_geometry(&m.alpha.gens, start, site.mirror));
    inserted.extend(route.iter().rev().map(|e| match *e {
        GeoEvent::Cross { pos, over } => GeoEvent::Cross { pos, over: over.flip() },
        other => other,
    }));
    let mut events = geo.events[..site.cut].to_vec();
    events.extend(inserted);
    events.extend_from_slice(&geo.events[site.cut..]);
    let out = crate::diagram::GeoWord::new(geo.top.clone(), events).orient_with(&[], Some(host.labels().to_vec()))?;
    debug_assert_eq!(out.n_components(), host.n_components());
    Ok(out)
}

/// Changes the crossing at event `index`.
pub fn crossing_change(s: &SliceWord, index: usize) -> Result<SliceWord, MoveError> {
    let mut events = s.events().to_vec();
    match events.get_mut(index) {
        Some(Event::Cross { sign, .. }) => *sign = sign.flip(),
        _ => return Err(MoveError::InvalidSite(format!("event {index} is not a crossing"))),
    }
    Ok(SliceWord::new(s.top().to_vec(), events, Some(s.labels().to_vec()))?)
}

/// Delta move on three strands: the C_2 model attached at the site.
pub fn delta_move(s: &SliceWord, site: &MoveSite) -> Result<SliceWord, MoveError> {
    band_sum(s, &ck_model(2)?, site)
}

/// Clasp-pass move on four strands: the C_3 model attached at the site.
pub fn clasp_pass(s: &SliceWord, site: &MoveSite) -> Result<SliceWord, MoveError> {
    band_sum(s, &ck_model(3)?, site)
}
