use std::collections::HashMap;

use log::debug;
use rayon::prelude::*;
use serde::Serialize;

use super::engine::{apply_tangle, evaluate_slice_with, kron_index, kron_key, tangle_operator, LocalRep, Pair, ResourceLimits};
use super::hecke::young_idempotent;
use super::{fundamental_rep, AlgebraSpec, ColorSpec, QuantumError};
use crate::diagram::{braid_closure, BraidWord, Event, Orient, Sign, SliceWord};
use crate::moves::{cable_crossing, parallel_cable};
use crate::ring::{exact_divide, vanish_order_at_1, LaurentPoly, RationalFunction, VanishOrder};

type Matrix<T> = Vec<Vec<T>>;

/// Some common multiple of `a` and `b` (not necessarily the least).
fn common_multiple(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let reduced = RationalFunction::new(a.clone(), b.clone()).expect("nonzero");
    a * reduced.denominator()
}

/// A common divisor of `a` and `b` (`b` nonzero).
fn common_divisor(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.clone();
    }
    let reduced = RationalFunction::new(a.clone(), b.clone()).expect("nonzero");
    exact_divide(b, reduced.denominator()).expect("reduced denominator divides")
}

/// Reduced row echelon form over the rational functions: pivot columns and
/// the nonzero rows.
fn rref(mut m: Matrix<RationalFunction>) -> (Vec<usize>, Matrix<RationalFunction>) {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (pivots, m)
}

/// The image of an idempotent on the tensor power of one orientation: a
/// polynomial basis `B` (columns) and a left inverse `C / gamma` with
/// `C B = gamma I` and `B C / gamma` the idempotent.
struct Bundle {
    b: Matrix<LaurentPoly>,
    // sparse columns of C: for each tensor index, the (row, value) pairs
    c_cols: Vec<Vec<(usize, LaurentPoly)>>,
    gamma: LaurentPoly,
    dim: usize,
}

/// Braid-word operator on `r` strands of one orientation. A word for a
/// downward bundle, rotated by a half turn, gives the word acting on the
/// same bundle where it runs upward.
fn word_slice(word: &[u8], r: usize, o: Orient) -> SliceWord {
    let events: Vec<Event> = match o {
        // T_i1 ... T_ik acts on the bundle as the slices i_k, ..., i_1
        Orient::Down => word.iter().rev().map(|&i| Event::Cross { pos: i as usize, sign: Sign::Pos }).collect(),
        Orient::Up => word.iter().map(|&i| Event::Cross { pos: r - 2 - i as usize, sign: Sign::Pos }).collect(),
    };
    SliceWord::new(vec![o; r], events, None).expect("braid word on parallel strands")
}

fn bundle(fund: &LocalRep, terms: &[(Vec<u8>, RationalFunction)], r: usize, o: Orient) -> Result<Bundle, QuantumError> {
    let m = fund.dim[0].pow(r as u32);
    let lcm = terms.iter().fold(LaurentPoly::one(), |acc, (_, c)| common_multiple(&acc, c.denominator()));
    let lim = ResourceLimits::unlimited();
    let ops: Vec<_> = terms
        .par_iter()
        .map(|(w, c)| {
            let scaled = (c * &RationalFunction::from(lcm.clone())).as_laurent().cloned().expect("denominator cleared");
            tangle_operator(&word_slice(w, r, o), fund, &lim).map(|op| (op, scaled))
        })
        .collect::<Result<_, _>>()?;
    let mut e_num = vec![vec![LaurentPoly::zero(); m]; m];
    for (op, c) in &ops {
        for (&(i, j), v) in op.entries() {
            e_num[i][j] += v * c;
        }
    }
    let (pivots, rows) = rref(e_num.iter().map(|row| row.iter().map(|p| RationalFunction::from(p.clone())).collect()).collect());
    let dim = pivots.len();
    let b: Matrix<LaurentPoly> = (0..m).map(|i| pivots.iter().map(|&j| e_num[i][j].clone()).collect()).collect();
    // C = R / lcm; gamma clears every denominator
    let inv_lcm = RationalFunction::from(lcm).inv()?;
    let c: Matrix<RationalFunction> = rows.iter().map(|row| row.iter().map(|x| x * &inv_lcm).collect()).collect();
    let gamma = c.iter().flatten().fold(LaurentPoly::one(), |acc, x| common_multiple(&acc, x.denominator()));
    let mut c_cols = vec![Vec::new(); m];
    for (a, row) in c.iter().enumerate() {
        for (u, x) in row.iter().enumerate() {
            if !x.is_zero() {
                let v = (x * &RationalFunction::from(gamma.clone())).as_laurent().cloned().expect("denominator cleared");
                c_cols[u].push((a, v));
            }
        }
    }
    debug!("bundle {o:?}: rank {dim} of {m}, gamma of degree {}", gamma.max_exp() - gamma.min_exp());
    Ok(Bundle { b, c_cols, gamma, dim })
}

/// `sum_u C1[c][u1] C2[d][u2] v[u]` with `u = u1 * m + u2`.
fn project(v: impl IntoIterator<Item = (usize, LaurentPoly)>, m: usize, c1: &Bundle, c2: &Bundle) -> Vec<(Pair, LaurentPoly)> {
    let mut half: HashMap<(usize, usize), LaurentPoly> = HashMap::new();
    for (u, x) in v {
        let (u1, u2) = (u / m, u % m);
        for (c, y) in &c1.c_cols[u1] {
            *half.entry((*c, u2)).or_insert_with(LaurentPoly::zero) += &x * y;
        }
    }
    let mut out: HashMap<Pair, LaurentPoly> = HashMap::new();
    for ((c, u2), x) in half {
        for (d, y) in &c2.c_cols[u2] {
            *out.entry((c as u32, *d as u32)).or_insert_with(LaurentPoly::zero) += &x * y;
        }
    }
    let mut out: Vec<_> = out.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    out.sort_by_key(|(p, _)| *p);
    out
}

/// Divides the entries and the denominator of a table by a common factor.
fn reduce_table(mut entries: Vec<&mut LaurentPoly>, den: &mut LaurentPoly) {
    let g = entries.iter().fold(den.clone(), |g, x| common_divisor(x, &g));
    if g.as_unit().is_some() {
        return;
    }
    let divided: Option<Vec<LaurentPoly>> = entries.iter().map(|x| exact_divide(x, &g).ok()).collect();
    if let (Some(divided), Ok(d)) = (divided, exact_divide(den, &g)) {
        for (x, y) in entries.iter_mut().zip(divided) {
            **x = y;
        }
        *den = d;
    }
}

/// A colored representation: the fundamental cable of `r` strands
/// restricted to the image of a Young idempotent, one bundle basis per
/// orientation.
#[derive(Clone, Debug)]
pub struct ColoredRep {
    alg: AlgebraSpec,
    color: ColorSpec,
    rep: LocalRep,
}

impl ColoredRep {
    pub fn new(alg: AlgebraSpec, color: ColorSpec) -> Result<Self, QuantumError> {
        let fund = fundamental_rep(alg);
        let r = color.boxes();
        if r == 1 {
            return Ok(ColoredRep { alg, color, rep: fund });
        }
        let terms = young_idempotent(color.tableau())?.terms();
        let bundles = [bundle(&fund, &terms, r, Orient::Down)?, bundle(&fund, &terms, r, Orient::Up)?];
        if bundles[0].dim == 0 {
            return Err(QuantumError::ZeroDimension);
        }
        let m = fund.dim[0].pow(r as u32);
        let bits = fund.bits();
        let lim = ResourceLimits::unlimited();
        let orients = [Orient::Down, Orient::Up];

        let mut rep = LocalRep {
            dim: [bundles[0].dim, bundles[1].dim],
            cup: Default::default(),
            cap: Default::default(),
            cross: Default::default(),
            cup_den: [LaurentPoly::one(), LaurentPoly::one()],
            cap_den: [LaurentPoly::one(), LaurentPoly::one()],
            cross_den: Default::default(),
        };
        for o in orients {
            let (bl, br) = (&bundles[o.index()], &bundles[o.flip().index()]);
            // nested cups, projected onto the two bundles
            let cup = SliceWord::new(vec![], (0..r).map(|k| Event::Cup { pos: k, left: o }).collect(), None)?;
            let v = tangle_operator(&cup, &fund, &lim)?;
            let mut table = project(v.entries().map(|(&(u, _), x)| (u, x.clone())), m, bl, br);
            let mut den = &bl.gamma * &br.gamma;
            reduce_table(table.iter_mut().map(|(_, x)| x).collect(), &mut den);
            rep.cup[o.index()] = table;
            rep.cup_den[o.index()] = den;
            // nested caps on the bundle bases
            let cap = SliceWord::new([vec![o; r], vec![o.flip(); r]].concat(), (0..r).rev().map(|k| Event::Cap { pos: k }).collect(), None)?;
            let w = tangle_operator(&cap, &fund, &lim)?;
            let mut table = Vec::new();
            for a in 0..bl.dim {
                for b in 0..br.dim {
                    let mut x = LaurentPoly::zero();
                    for (&(_, u), y) in w.entries() {
                        let (p, q) = (&bl.b[u / m][a], &br.b[u % m][b]);
                        if !p.is_zero() && !q.is_zero() {
                            x += &(y * p) * q;
                        }
                    }
                    if !x.is_zero() {
                        table.push(((a as u32, b as u32), x));
                    }
                }
            }
            rep.cap[o.index()] = table;
        }
        for sign in [Sign::Pos, Sign::Neg] {
            for ol in orients {
                for or in orients {
                    let (bl, br) = (&bundles[ol.index()], &bundles[or.index()]);
                    let top = [vec![ol; r], vec![or; r]].concat();
                    let bottom = [vec![or; r], vec![ol; r]].concat();
                    let tangle = SliceWord::new(top.clone(), cable_crossing(r, 0, sign).collect(), None)?;
                    let pairs: Vec<(usize, usize)> = (0..bl.dim).flat_map(|a| (0..br.dim).map(move |b| (a, b))).collect();
                    let inputs: Vec<Vec<(u128, LaurentPoly)>> = pairs
                        .iter()
                        .map(|&(a, b)| {
                            let mut v = Vec::new();
                            for u1 in (0..m).filter(|&u| !bl.b[u][a].is_zero()) {
                                for u2 in (0..m).filter(|&u| !br.b[u][b].is_zero()) {
                                    v.push((kron_key(u1 * m + u2, &top, fund.dim, bits), &bl.b[u1][a] * &br.b[u2][b]));
                                }
                            }
                            v
                        })
                        .collect();
                    let outs = apply_tangle(&tangle, &fund, &inputs, &lim)?;
                    let mut table: Vec<(Pair, Vec<(Pair, LaurentPoly)>)> = pairs
                        .par_iter()
                        .zip(outs.into_par_iter())
                        .map(|(&(a, b), out)| {
                            let v = out.into_iter().map(|(k, x)| (kron_index(k, &bottom, fund.dim, bits), x));
                            ((a as u32, b as u32), project(v, m, br, bl))
                        })
                        .filter(|(_, outs)| !outs.is_empty())
                        .collect();
                    let mut den = &bl.gamma * &br.gamma;
                    reduce_table(table.iter_mut().flat_map(|(_, outs)| outs.iter_mut().map(|(_, x)| x)).collect(), &mut den);
                    rep.cross[sign.index()][ol.index()][or.index()] = table;
                    rep.cross_den[sign.index()][ol.index()][or.index()] = den;
                }
            }
        }
        Ok(ColoredRep { alg, color, rep })
    }

    pub fn algebra(&self) -> AlgebraSpec {
        self.alg
    }

    pub fn color(&self) -> &ColorSpec {
        &self.color
    }

    pub fn local_rep(&self) -> &LocalRep {
        &self.rep
    }

    /// Dimension of the colored module.
    pub fn dimension(&self) -> usize {
        self.rep.dim[0]
    }

    /// Framed value of a closed diagram with every component in this color.
    pub fn evaluate(&self, s: &SliceWord, limits: &ResourceLimits) -> Result<LaurentPoly, QuantumError> {
        evaluate_slice_with(s, &self.rep, limits)
    }

    /// The colored unknot.
    pub fn quantum_dimension(&self) -> Result<LaurentPoly, QuantumError> {
        let d = self.evaluate(&SliceWord::unknot(), &ResourceLimits::unlimited())?;
        if d.is_zero() {
            return Err(QuantumError::ZeroDimension);
        }
        Ok(d)
    }

    /// Action of a positive curl, measured on a one-crossing unknot.
    pub fn curl_scalar(&self) -> Result<LaurentPoly, QuantumError> {
        let curl = self.evaluate(&positive_curl(), &ResourceLimits::unlimited())?;
        Ok(exact_divide(&curl, &self.quantum_dimension()?)?)
    }
}

fn positive_curl() -> SliceWord {
    braid_closure(&BraidWord::new(2, vec![1]).expect("valid braid"))
}

/// `curl^(-writhe) * framed`, for a curl scalar that is a unit.
fn unframe(framed: &LaurentPoly, curl: &LaurentPoly, writhe: i64) -> Result<LaurentPoly, QuantumError> {
    let (sign, e) = curl.as_unit().ok_or_else(|| QuantumError::InvalidSpec(format!("curl scalar {curl} is not a unit")))?;
    let sign = if sign < 0 && writhe % 2 != 0 { -1 } else { 1 };
    Ok(framed.shift(-e * writhe) * LaurentPoly::constant(sign))
}

/// Curl scalar of a color: a positive curl on a strand of that color acts
/// by this unit.
pub fn curl_scalar(alg: AlgebraSpec, color: &ColorSpec) -> Result<LaurentPoly, QuantumError> {
    ColoredRep::new(alg, color.clone())?.curl_scalar()
}

/// Quantities of one colored evaluation. The invariant is
/// `framed * curl_scalar^(-writhe)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationReport {
    pub framed: LaurentPoly,
    pub curl_scalar: LaurentPoly,
    pub writhe: i64,
    pub invariant: LaurentPoly,
    pub quantum_dimension: LaurentPoly,
}

#[derive(Serialize)]
struct ReportRepr<'a> {
    framed: String,
    curl_scalar: String,
    writhe: i64,
    invariant: String,
    quantum_dimension: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    color: Option<&'a ColorSpec>,
}

impl EvaluationReport {
    fn from_parts(framed: LaurentPoly, curl: LaurentPoly, writhe: i64, quantum_dimension: LaurentPoly) -> Result<Self, QuantumError> {
        let invariant = unframe(&framed, &curl, writhe)?;
        Ok(EvaluationReport { framed, curl_scalar: curl, writhe, invariant, quantum_dimension })
    }

    pub fn to_json(&self) -> String {
        let repr = ReportRepr {
            framed: self.framed.to_text(),
            curl_scalar: self.curl_scalar.to_text(),
            writhe: self.writhe,
            invariant: self.invariant.to_text(),
            quantum_dimension: self.quantum_dimension.to_text(),
            color: None,
        };
        serde_json::to_string_pretty(&repr).expect("serializable")
    }
}

/// Unframed invariant of a link with every component colored by the
/// fundamental representation.
pub fn fundamental_invariant(s: &SliceWord, alg: AlgebraSpec, limits: &ResourceLimits) -> Result<EvaluationReport, QuantumError> {
    let rep = ColoredRep::new(alg, ColorSpec::fundamental())?;
    let framed = rep.evaluate(s, limits)?;
    EvaluationReport::from_parts(framed, rep.curl_scalar()?, s.writhe(), rep.quantum_dimension()?)
}

/// Colored invariant of a knot in a prepared representation.
pub fn colored_invariant_with(knot: &SliceWord, rep: &ColoredRep, limits: &ResourceLimits) -> Result<EvaluationReport, QuantumError> {
    check_knot(knot)?;
    let framed = rep.evaluate(knot, limits)?;
    EvaluationReport::from_parts(framed, rep.curl_scalar()?, knot.writhe(), rep.quantum_dimension()?)
}

/// Colored invariant of a knot, evaluated on the projected cable.
pub fn colored_invariant(knot: &SliceWord, alg: AlgebraSpec, color: &ColorSpec) -> Result<EvaluationReport, QuantumError> {
    check_knot(knot)?;
    colored_invariant_with(knot, &ColoredRep::new(alg, color.clone())?, &ResourceLimits::default())
}

fn check_knot(knot: &SliceWord) -> Result<(), QuantumError> {
    if !knot.is_closed() {
        return Err(QuantumError::NotClosed);
    }
    match knot.n_components() {
        1 => Ok(()),
        n => Err(QuantumError::NotAKnot(n)),
    }
}

/// Framed colored value through the full cable: the knot is cabled `r`
/// times and the idempotent is inserted once, as a sum of braid words on a
/// downward bundle, each term evaluated in the fundamental representation.
pub fn cabled_framed_value(knot: &SliceWord, alg: AlgebraSpec, color: &ColorSpec, limits: &ResourceLimits) -> Result<LaurentPoly, QuantumError> {
    check_knot(knot)?;
    let r = color.boxes();
    let fund = fundamental_rep(alg);
    let cable = parallel_cable(knot, r);
    if r == 1 {
        return evaluate_slice_with(&cable, &fund, limits);
    }
    // the knot starts with a cup; its downward arm hosts the idempotent
    let Some(&Event::Cup { pos, left }) = knot.events().first() else { return Err(QuantumError::NotClosed) };
    let base = if left == Orient::Down { r * pos } else { r * pos + r };
    let terms = young_idempotent(color.tableau())?.terms();
    let lcm = terms.iter().fold(LaurentPoly::one(), |acc, (_, c)| common_multiple(&acc, c.denominator()));
    let values: Vec<LaurentPoly> = terms
        .par_iter()
        .map(|(w, c)| {
            let mut events = cable.events()[..r].to_vec();
            events.extend(word_slice(w, r, Orient::Down).events().iter().map(|e| e.with_pos(e.pos() + base)));
            events.extend_from_slice(&cable.events()[r..]);
            let s = SliceWord::closed(events)?;
            let v = evaluate_slice_with(&s, &fund, limits)?;
            let scaled = (c * &RationalFunction::from(lcm.clone())).as_laurent().cloned().expect("denominator cleared");
            Ok(v * scaled)
        })
        .collect::<Result<_, QuantumError>>()?;
    Ok(exact_divide(&values.into_iter().sum(), &lcm)?)
}

/// Colored invariant through the full cable, with the curl scalar and the
/// quantum dimension measured the same way. Meant as a reference for small
/// diagrams.
pub fn colored_invariant_cabled(knot: &SliceWord, alg: AlgebraSpec, color: &ColorSpec, limits: &ResourceLimits) -> Result<EvaluationReport, QuantumError> {
    let framed = cabled_framed_value(knot, alg, color, limits)?;
    let dim = cabled_framed_value(&SliceWord::unknot(), alg, color, limits)?;
    if dim.is_zero() {
        return Err(QuantumError::ZeroDimension);
    }
    let curl = exact_divide(&cabled_framed_value(&positive_curl(), alg, color, limits)?, &dim)?;
    EvaluationReport::from_parts(framed, curl, knot.writhe(), dim)
}

/// Difference of two colored invariants and its order of vanishing at
/// `q = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    pub first: EvaluationReport,
    pub second: EvaluationReport,
    pub difference: LaurentPoly,
    /// `difference / quantum_dimension`.
    pub normalized_difference: LaurentPoly,
    pub vanish_order: VanishOrder,
}

#[derive(Serialize)]
struct ComparisonRepr {
    first: serde_json::Value,
    second: serde_json::Value,
    difference: String,
    normalized_difference: String,
    vanish_order: String,
}

impl ComparisonReport {
    pub fn to_json(&self) -> String {
        let repr = ComparisonRepr {
            first: serde_json::from_str(&self.first.to_json()).expect("valid json"),
            second: serde_json::from_str(&self.second.to_json()).expect("valid json"),
            difference: self.difference.to_text(),
            normalized_difference: self.normalized_difference.to_text(),
            vanish_order: self.vanish_order.to_string(),
        };
        serde_json::to_string_pretty(&repr).expect("serializable")
    }
}

pub fn compare_with(k1: &SliceWord, k2: &SliceWord, rep: &ColoredRep, limits: &ResourceLimits) -> Result<ComparisonReport, QuantumError> {
    let first = colored_invariant_with(k1, rep, limits)?;
    let second = colored_invariant_with(k2, rep, limits)?;
    let difference = &first.invariant - &second.invariant;
    let normalized_difference = exact_divide(&difference, &first.quantum_dimension)?;
    let vanish_order = vanish_order_at_1(&difference)?;
    Ok(ComparisonReport { first, second, difference, normalized_difference, vanish_order })
}

pub fn compare_knots(k1: &SliceWord, k2: &SliceWord, alg: AlgebraSpec, color: &ColorSpec) -> Result<ComparisonReport, QuantumError> {
    check_knot(k1)?;
    check_knot(k2)?;
    compare_with(k1, k2, &ColoredRep::new(alg, color.clone())?, &ResourceLimits::default())
}
