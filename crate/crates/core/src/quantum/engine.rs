use std::collections::HashMap;

use log::debug;
use rayon::prelude::*;

use super::{AlgebraSpec, QuantumError};
use crate::diagram::{Event, Orient, SliceWord};
use crate::ring::{exact_divide, Coeff, DensePoly, LaurentPoly, SparseOperator};

/// A pair of basis indices on two neighbouring strands (left, right).
pub type Pair = (u32, u32);

/// Local tensors of a representation attached to oriented strands. Basis
/// sizes may differ between downward and upward strands. Entries are
/// polynomials in `q` (even powers of `s`); each table carries one scalar
/// denominator by which all its entries are to be divided.
#[derive(Clone, Debug)]
pub struct LocalRep {
    /// Basis size for `Orient::Down`, `Orient::Up`.
    pub dim: [usize; 2],
    /// Cups by orientation of the left arm.
    pub cup: [Vec<(Pair, LaurentPoly)>; 2],
    /// Caps by orientation of the left strand.
    pub cap: [Vec<(Pair, LaurentPoly)>; 2],
    /// Crossings `[sign][left orient][right orient]`: input pair at the top
    /// to output pairs at the bottom.
    pub cross: [[[Vec<(Pair, Vec<(Pair, LaurentPoly)>)>; 2]; 2]; 2],
    pub cup_den: [LaurentPoly; 2],
    pub cap_den: [LaurentPoly; 2],
    pub cross_den: [[[LaurentPoly; 2]; 2]; 2],
}

impl LocalRep {
    pub(crate) fn bits(&self) -> u32 {
        let d = self.dim[0].max(self.dim[1]).max(2);
        usize::BITS - (d - 1).leading_zeros()
    }

    pub(crate) fn has_denominators(&self) -> bool {
        self.cup_den.iter().chain(&self.cap_den).chain(self.cross_den.iter().flatten().flatten()).any(|d| !d.is_one())
    }
}

/// Bounds on the transfer contraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceLimits {
    /// Largest number of strands allowed at any cut.
    pub max_cut_width: usize,
    /// Largest number of nonzero states kept between two events.
    pub max_states: usize,
}

impl Default for ResourceLimits {
    fn default() -> Self {
        ResourceLimits { max_cut_width: 12, max_states: 20_000_000 }
    }
}

impl ResourceLimits {
    pub fn unlimited() -> Self {
        ResourceLimits { max_cut_width: usize::MAX, max_states: usize::MAX }
    }
}

enum Failure {
    Overflow,
    Limit(String),
}

struct Compiled<C> {
    bits: u32,
    dim: [usize; 2],
    cup: [Vec<(u128, u128, DensePoly<C>)>; 2],
    // dense tables indexed by i * dim_right + j
    cap: [Vec<Option<DensePoly<C>>>; 2],
    cross: [[[Vec<Vec<(u128, u128, DensePoly<C>)>>; 2]; 2]; 2],
}

fn conv<C: Coeff>(p: &LaurentPoly) -> Result<DensePoly<C>, Failure> {
    DensePoly::from_laurent(p, 2).ok_or(Failure::Overflow)
}

impl<C: Coeff> Compiled<C> {
    fn new(rep: &LocalRep) -> Result<Self, Failure> {
        let mut cup: [Vec<_>; 2] = [Vec::new(), Vec::new()];
        let mut cap: [Vec<_>; 2] = [Vec::new(), Vec::new()];
        let mut cross: [[[Vec<Vec<_>>; 2]; 2]; 2] = Default::default();
        for o in 0..2 {
            for ((i, j), c) in &rep.cup[o] {
                cup[o].push((*i as u128, *j as u128, conv(c)?));
            }
            let dr = rep.dim[1 - o];
            cap[o] = vec![None; rep.dim[o] * dr];
            for ((i, j), c) in &rep.cap[o] {
                cap[o][*i as usize * dr + *j as usize] = Some(conv(c)?);
            }
        }
        for (s, by_sign) in rep.cross.iter().enumerate() {
            for ol in 0..2 {
                for or in 0..2 {
                    let dr = rep.dim[or];
                    let mut table = vec![Vec::new(); rep.dim[ol] * dr];
                    for ((i, j), outs) in &by_sign[ol][or] {
                        let mut v = Vec::with_capacity(outs.len());
                        for ((a, b), c) in outs {
                            v.push((*a as u128, *b as u128, conv(c)?));
                        }
                        table[*i as usize * dr + *j as usize] = v;
                    }
                    cross[s][ol][or] = table;
                }
            }
        }
        Ok(Compiled { bits: rep.bits(), dim: rep.dim, cup, cap, cross })
    }
}

type State<C> = HashMap<u128, DensePoly<C>>;

#[inline]
fn digit(key: u128, bits: u32, pos: usize) -> u128 {
    (key >> (bits as usize * pos)) & ((1u128 << bits) - 1)
}

#[inline]
fn low(key: u128, bits: u32, pos: usize) -> u128 {
    let sh = bits as usize * pos;
    if sh == 0 {
        0
    } else {
        key & ((1u128 << sh) - 1)
    }
}

#[inline]
fn high(key: u128, bits: u32, pos: usize) -> u128 {
    let sh = bits as usize * pos;
    if sh >= 128 {
        0
    } else {
        key >> sh
    }
}

#[inline]
fn shl(x: u128, n: usize) -> u128 {
    if n >= 128 {
        0
    } else {
        x << n
    }
}

#[inline]
fn with_pair(lo: u128, hi: u128, a: u128, b: u128, bits: u32, pos: usize) -> u128 {
    let sh = bits as usize * pos;
    lo | shl(a, sh) | shl(b, sh + bits as usize) | shl(hi, sh + 2 * bits as usize)
}

#[inline]
fn accumulate<C: Coeff>(out: &mut State<C>, key: u128, a: &DensePoly<C>, b: &DensePoly<C>) -> Result<(), Failure> {
    out.entry(key).or_insert_with(DensePoly::zero).add_mul(a, b).ok_or(Failure::Overflow)
}

// states above this size are processed in parallel chunks
const PARALLEL_THRESHOLD: usize = 1 << 14;

fn step<C: Coeff>(rep: &Compiled<C>, cur: &[Orient], ev: &Event, state: State<C>) -> Result<State<C>, Failure> {
    let bits = rep.bits;
    let apply = |chunk: &[(u128, DensePoly<C>)]| -> Result<State<C>, Failure> {
        let mut out: State<C> = HashMap::with_capacity(chunk.len());
        for (key, val) in chunk {
            let key = *key;
            match *ev {
                Event::Cup { pos, left } => {
                    let (lo, hi) = (low(key, bits, pos), high(key, bits, pos));
                    for (i, j, c) in &rep.cup[left.index()] {
                        accumulate(&mut out, with_pair(lo, hi, *i, *j, bits, pos), val, c)?;
                    }
                }
                Event::Cap { pos } => {
                    let o = cur[pos].index();
                    let (i, j) = (digit(key, bits, pos), digit(key, bits, pos + 1));
                    if let Some(c) = &rep.cap[o][i as usize * rep.dim[1 - o] + j as usize] {
                        let nk = low(key, bits, pos) | shl(high(key, bits, pos + 2), bits as usize * pos);
                        accumulate(&mut out, nk, val, c)?;
                    }
                }
                Event::Cross { pos, sign } => {
                    let (ol, or) = (cur[pos].index(), cur[pos + 1].index());
                    let (i, j) = (digit(key, bits, pos), digit(key, bits, pos + 1));
                    let (lo, hi) = (low(key, bits, pos), high(key, bits, pos + 2));
                    for (a, b, c) in &rep.cross[sign.index()][ol][or][i as usize * rep.dim[or] + j as usize] {
                        accumulate(&mut out, with_pair(lo, hi, *a, *b, bits, pos), val, c)?;
                    }
                }
            }
        }
        out.retain(|_, v| {
            v.trim();
            !v.is_zero()
        });
        Ok(out)
    };
    let entries: Vec<(u128, DensePoly<C>)> = state.into_iter().collect();
    if entries.len() < PARALLEL_THRESHOLD {
        return apply(&entries);
    }
    let chunk = entries.len().div_ceil(rayon::current_num_threads() * 4);
    let parts: Vec<State<C>> = entries.par_chunks(chunk).map(apply).collect::<Result<_, _>>()?;
    let mut parts = parts.into_iter();
    let mut out = parts.next().unwrap_or_default();
    for part in parts {
        for (k, v) in part {
            let slot = out.entry(k).or_insert_with(DensePoly::zero);
            slot.add_assign(&v).ok_or(Failure::Overflow)?;
        }
    }
    out.retain(|_, v| {
        v.trim();
        !v.is_zero()
    });
    Ok(out)
}

fn sweep<C: Coeff>(rep: &Compiled<C>, top: &[Orient], events: &[Event], init: State<C>, limits: &ResourceLimits) -> Result<State<C>, Failure> {
    let mut cur = top.to_vec();
    let mut state = init;
    for (t, ev) in events.iter().enumerate() {
        state = step(rep, &cur, ev, state)?;
        match *ev {
            Event::Cup { pos, left } => {
                cur.insert(pos, left.flip());
                cur.insert(pos, left);
            }
            Event::Cap { pos } => {
                cur.drain(pos..pos + 2);
            }
            Event::Cross { pos, .. } => cur.swap(pos, pos + 1),
        }
        if cur.len() > limits.max_cut_width || cur.len() * rep.bits as usize > 128 {
            return Err(Failure::Limit(format!("cut width {} after event {t} exceeds the limit of {}", cur.len(), limits.max_cut_width)));
        }
        if state.len() > limits.max_states {
            return Err(Failure::Limit(format!("{} states after event {t} exceed the limit of {}", state.len(), limits.max_states)));
        }
        if state.len() > PARALLEL_THRESHOLD {
            debug!("event {t}/{}: width {}, {} states", events.len(), cur.len(), state.len());
        }
    }
    Ok(state)
}

fn sweep_any(
    rep: &LocalRep,
    top: &[Orient],
    events: &[Event],
    init: &[(u128, LaurentPoly)],
    limits: &ResourceLimits,
) -> Result<HashMap<u128, LaurentPoly>, QuantumError> {
    fn attempt<C: Coeff>(
        rep: &LocalRep,
        top: &[Orient],
        events: &[Event],
        init: &[(u128, LaurentPoly)],
        limits: &ResourceLimits,
    ) -> Result<HashMap<u128, LaurentPoly>, Failure> {
        let compiled = Compiled::<C>::new(rep)?;
        let mut start = HashMap::new();
        for (k, v) in init {
            start.insert(*k, conv::<C>(v)?);
        }
        let out = sweep(&compiled, top, events, start, limits)?;
        Ok(out.into_iter().map(|(k, v)| (k, v.to_laurent(2))).collect())
    }
    let result = match attempt::<i64>(rep, top, events, init, limits) {
        Err(Failure::Overflow) => {
            debug!("i64 coefficients overflowed, retrying with i128");
            match attempt::<i128>(rep, top, events, init, limits) {
                Err(Failure::Overflow) => {
                    debug!("i128 coefficients overflowed, retrying with big integers");
                    attempt::<num_bigint::BigInt>(rep, top, events, init, limits)
                }
                r => r,
            }
        }
        r => r,
    };
    result.map_err(|f| match f {
        Failure::Overflow => unreachable!("big integers do not overflow"),
        Failure::Limit(m) => QuantumError::ResourceLimit(m),
    })
}

/// Product of the table denominators used by the events of `s`.
fn denominator(rep: &LocalRep, s: &SliceWord) -> LaurentPoly {
    if !rep.has_denominators() {
        return LaurentPoly::one();
    }
    let tr = s.trace();
    let mut den = LaurentPoly::one();
    for (t, ev) in s.events().iter().enumerate() {
        let o = &tr.orients[t];
        let d = match *ev {
            Event::Cup { left, .. } => &rep.cup_den[left.index()],
            Event::Cap { pos } => &rep.cap_den[o[pos].index()],
            Event::Cross { pos, sign } => &rep.cross_den[sign.index()][o[pos].index()][o[pos + 1].index()],
        };
        if !d.is_one() {
            den = den * d;
        }
    }
    den
}

/// Framed evaluation of a closed slice word in an arbitrary local
/// representation. The result must be a Laurent polynomial once the table
/// denominators are divided out.
pub fn evaluate_slice_with(s: &SliceWord, rep: &LocalRep, limits: &ResourceLimits) -> Result<LaurentPoly, QuantumError> {
    if !s.is_closed() {
        return Err(QuantumError::NotClosed);
    }
    let out = sweep_any(rep, &[], s.events(), &[(0, LaurentPoly::one())], limits)?;
    let num = out.get(&0).cloned().unwrap_or_else(LaurentPoly::zero);
    Ok(exact_divide(&num, &denominator(rep, s))?)
}

/// Framed fundamental `U_q(sl_N)` invariant of a closed slice word.
pub fn evaluate_slice(s: &SliceWord, alg: AlgebraSpec) -> Result<LaurentPoly, QuantumError> {
    evaluate_slice_with(s, &super::fundamental_rep(alg), &ResourceLimits::default())
}

/// Index of a basis state in the Kronecker ordering (leftmost strand most
/// significant) from packed digits.
pub(crate) fn kron_index(key: u128, orients: &[Orient], dim: [usize; 2], bits: u32) -> usize {
    let mut idx = 0;
    for (p, o) in orients.iter().enumerate() {
        idx = idx * dim[o.index()] + digit(key, bits, p) as usize;
    }
    idx
}

pub(crate) fn kron_key(mut idx: usize, orients: &[Orient], dim: [usize; 2], bits: u32) -> u128 {
    let mut key = 0u128;
    for (p, o) in orients.iter().enumerate().rev() {
        let d = dim[o.index()];
        key |= ((idx % d) as u128) << (bits as usize * p);
        idx /= d;
    }
    key
}

/// Applies an open slice word to a list of input vectors given in packed
/// form; returns the output vectors. Table denominators are ignored, so
/// this is meant for representations without them.
pub(crate) fn apply_tangle(
    s: &SliceWord,
    rep: &LocalRep,
    inputs: &[Vec<(u128, LaurentPoly)>],
    limits: &ResourceLimits,
) -> Result<Vec<HashMap<u128, LaurentPoly>>, QuantumError> {
    debug_assert!(!rep.has_denominators());
    inputs.par_iter().map(|v| sweep_any(rep, s.top(), s.events(), v, limits)).collect()
}

/// The operator of an open slice word (rows: bottom basis, columns: top
/// basis, both in Kronecker order) for a representation without
/// denominators.
pub fn tangle_operator(s: &SliceWord, rep: &LocalRep, limits: &ResourceLimits) -> Result<SparseOperator<LaurentPoly>, QuantumError> {
    if rep.has_denominators() {
        return Err(QuantumError::InvalidSpec("tangle operators need a representation without denominators".into()));
    }
    let bits = rep.bits();
    let top = s.top().to_vec();
    let bottom = s.bottom();
    let size = |o: &[Orient]| o.iter().map(|x| rep.dim[x.index()]).product::<usize>();
    let (cols, rows) = (size(&top), size(&bottom));
    let inputs: Vec<Vec<(u128, LaurentPoly)>> = (0..cols).map(|c| vec![(kron_key(c, &top, rep.dim, bits), LaurentPoly::one())]).collect();
    let outs = apply_tangle(s, rep, &inputs, limits)?;
    let mut op = SparseOperator::new(rows, cols);
    for (c, out) in outs.into_iter().enumerate() {
        for (k, v) in out {
            op.set(kron_index(k, &bottom, rep.dim, bits), c, v);
        }
    }
    Ok(op)
}
