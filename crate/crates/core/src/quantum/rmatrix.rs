use super::engine::{apply_tangle, kron_index, kron_key, LocalRep, Pair, ResourceLimits};
use super::AlgebraSpec;
use crate::diagram::{over_strand, GeoEvent, GeoWord, Orient, Sign};
use crate::ring::{LaurentPoly, SparseOperator};

/// Sign in the cup weight exponent: the cup with an upward left arm on
/// basis vector `i` carries `q^(CUP_WEIGHT_SIGN * (N - 1 - 2i))`.
pub const CUP_WEIGHT_SIGN: i64 = 1;

fn q_pow(e: i64) -> LaurentPoly {
    LaurentPoly::q_monomial(1, e)
}

fn q_minus_qinv() -> LaurentPoly {
    LaurentPoly::from_q_terms([(1, 1), (-1, -1)])
}

/// Braiding `R = P R_0` on `V (x) V` with eigenvalues `q` and `-q^-1`:
/// `e_i e_i -> q e_i e_i`, `e_i e_j -> e_j e_i + (q - q^-1) e_i e_j` for
/// `i < j` and `e_i e_j -> e_j e_i` for `i > j`. Index of `e_a e_b` is
/// `a N + b`.
pub fn fundamental_r(n: usize) -> SparseOperator<LaurentPoly> {
    let mut r = SparseOperator::new(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let col = i * n + j;
            if i == j {
                r.set(col, col, q_pow(1));
            } else {
                r.set(j * n + i, col, LaurentPoly::one());
                if i < j {
                    r.set(col, col, q_minus_qinv());
                }
            }
        }
    }
    r
}

/// The inverse braiding, `R - (q - q^-1) Id`.
pub fn fundamental_r_inv(n: usize) -> SparseOperator<LaurentPoly> {
    let r = fundamental_r(n);
    r.minus(&SparseOperator::identity(n * n).scaled(&q_minus_qinv()))
}

fn table_from(op: &SparseOperator<LaurentPoly>, d_in_right: usize, d_out_right: usize) -> Vec<(Pair, Vec<(Pair, LaurentPoly)>)> {
    let mut by_col: std::collections::BTreeMap<usize, Vec<(Pair, LaurentPoly)>> = Default::default();
    for (&(row, col), v) in op.entries() {
        let out = ((row / d_out_right) as u32, (row % d_out_right) as u32);
        by_col.entry(col).or_default().push((out, v.clone()));
    }
    by_col.into_iter().map(|(col, outs)| (((col / d_in_right) as u32, (col % d_in_right) as u32), outs)).collect()
}

fn empty_cross() -> [[[Vec<(Pair, Vec<(Pair, LaurentPoly)>)>; 2]; 2]; 2] {
    Default::default()
}

fn ones() -> [LaurentPoly; 2] {
    [LaurentPoly::one(), LaurentPoly::one()]
}

/// The fundamental representation on both orientations, with mixed
/// crossings obtained by rotating the downward crossing through cups and
/// caps.
pub fn fundamental_rep(alg: AlgebraSpec) -> LocalRep {
    let n = alg.n();
    let w = |i: usize| CUP_WEIGHT_SIGN * (n as i64 - 1 - 2 * i as i64);
    let diag = |f: &dyn Fn(usize) -> LaurentPoly| (0..n).map(|i| ((i as u32, i as u32), f(i))).collect::<Vec<_>>();
    let mut cross = empty_cross();
    cross[Sign::Pos.index()][0][0] = table_from(&fundamental_r(n), n, n);
    cross[Sign::Neg.index()][0][0] = table_from(&fundamental_r_inv(n), n, n);
    let mut rep = LocalRep {
        dim: [n, n],
        cup: [diag(&|_| LaurentPoly::one()), diag(&|i| q_pow(w(i)))],
        cap: [diag(&|i| q_pow(-w(i))), diag(&|_| LaurentPoly::one())],
        cross,
        cup_den: ones(),
        cap_den: ones(),
        cross_den: [[ones(), ones()], [ones(), ones()]],
    };
    // mixed orientations: (down, up) and (up, down) from down-down, then
    // (up, up) from (down, up)
    for (ol, or) in [(Orient::Down, Orient::Up), (Orient::Up, Orient::Down), (Orient::Up, Orient::Up)] {
        for sign in [Sign::Pos, Sign::Neg] {
            let table = rotated_crossing(&rep, sign, ol, or);
            rep.cross[sign.index()][ol.index()][or.index()] = table;
        }
    }
    rep
}

/// Tangle realizing the crossing `(sign, ol, or)` by turning one strand
/// around a crossing of lower type.
fn rotated_crossing(rep: &LocalRep, sign: Sign, ol: Orient, or: Orient) -> Vec<(Pair, Vec<(Pair, LaurentPoly)>)> {
    let over = over_strand(sign, ol, or);
    let inner = over.flip();
    let events = match (ol, or) {
        (Orient::Up, Orient::Down) => vec![
            GeoEvent::Cup { pos: 2, left: Orient::Down },
            GeoEvent::Cross { pos: 1, over: inner },
            GeoEvent::Cap { pos: 0 },
        ],
        _ => vec![
            GeoEvent::Cup { pos: 0, left: Orient::Up },
            GeoEvent::Cross { pos: 1, over: inner },
            GeoEvent::Cap { pos: 2 },
        ],
    };
    let tangle = GeoWord::new(vec![ol, or], events).orient().expect("rotated crossing is well formed");
    debug_assert_eq!(tangle.bottom(), vec![or, ol]);
    let bits = rep.bits();
    let top = [ol, or];
    let bottom = [or, ol];
    let cols = rep.dim[ol.index()] * rep.dim[or.index()];
    let inputs: Vec<_> = (0..cols).map(|c| vec![(kron_key(c, &top, rep.dim, bits), LaurentPoly::one())]).collect();
    let outs = apply_tangle(&tangle, rep, &inputs, &ResourceLimits::unlimited()).expect("small tangle");
    let d_out_right = rep.dim[ol.index()];
    let d_in_right = rep.dim[or.index()];
    outs.into_iter()
        .enumerate()
        .filter(|(_, m)| !m.is_empty())
        .map(|(c, m)| {
            let input = ((c / d_in_right) as u32, (c % d_in_right) as u32);
            let mut outs: Vec<(Pair, LaurentPoly)> = m
                .into_iter()
                .map(|(k, v)| {
                    let row = kron_index(k, &bottom, rep.dim, bits);
                    (((row / d_out_right) as u32, (row % d_out_right) as u32), v)
                })
                .collect();
            outs.sort_by_key(|(p, _)| *p);
            (input, outs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::engine::tangle_operator;
    use crate::diagram::{Event, Over, SliceWord};

    #[test]
    fn r_inverse_and_hecke() {
        for n in 2..=4 {
            let r = fundamental_r(n);
            let ri = fundamental_r_inv(n);
            let id = SparseOperator::identity(n * n);
            assert_eq!(r.compose(&ri), id);
            let a = r.minus(&id.scaled(&q_pow(1)));
            let b = r.plus(&id.scaled(&q_pow(-1)));
            assert!(a.compose(&b).is_zero());
        }
    }

    #[test]
    fn yang_baxter() {
        for n in 2..=4 {
            let r = fundamental_r(n);
            let id = SparseOperator::<LaurentPoly>::identity(n);
            let r12 = r.kron(&id);
            let r23 = id.kron(&r);
            assert_eq!(r12.compose(&r23).compose(&r12), r23.compose(&r12).compose(&r23));
        }
    }

    fn op(top: Vec<Orient>, events: Vec<Event>, n: usize) -> SparseOperator<LaurentPoly> {
        let s = SliceWord::new(top, events, None).unwrap();
        tangle_operator(&s, &fundamental_rep(AlgebraSpec::new(n).unwrap()), &ResourceLimits::unlimited()).unwrap()
    }

    #[test]
    fn reidemeister_two_all_orientations() {
        for n in 2..=3 {
            for top in [[Orient::Down, Orient::Up], [Orient::Up, Orient::Down], [Orient::Up, Orient::Up], [Orient::Down, Orient::Down]] {
                let x = op(top.to_vec(), vec![Event::Cross { pos: 0, sign: Sign::Pos }, Event::Cross { pos: 0, sign: Sign::Neg }], n);
                let dim = n * n;
                assert_eq!(x, SparseOperator::identity(dim), "{top:?}");
            }
        }
    }

    #[test]
    fn zigzag_and_sliding() {
        let n = 3;
        let id = SparseOperator::<LaurentPoly>::identity(n);
        for o in [Orient::Down, Orient::Up] {
            let z1 = op(vec![o], vec![Event::Cup { pos: 1, left: o.flip() }, Event::Cap { pos: 0 }], n);
            let z2 = op(vec![o], vec![Event::Cup { pos: 0, left: o }, Event::Cap { pos: 1 }], n);
            assert_eq!(z1, id);
            assert_eq!(z2, id);
        }
        // a crossing slides around a cap and around a cup
        let rep = fundamental_rep(AlgebraSpec::new(n).unwrap());
        let lim = ResourceLimits::unlimited();
        for over in [Over::Left, Over::Right] {
            for o in [Orient::Down, Orient::Up] {
                for x in [Orient::Down, Orient::Up] {
                    let g = |events: Vec<GeoEvent>| GeoWord::new(vec![o, x, o.flip()], events).orient().unwrap();
                    let a = g(vec![GeoEvent::Cross { pos: 0, over }, GeoEvent::Cap { pos: 1 }]);
                    let b = g(vec![GeoEvent::Cross { pos: 1, over: over.flip() }, GeoEvent::Cap { pos: 0 }]);
                    assert_eq!(tangle_operator(&a, &rep, &lim).unwrap(), tangle_operator(&b, &rep, &lim).unwrap());
                    let g = |events: Vec<GeoEvent>| GeoWord::new(vec![x], events).orient().unwrap();
                    let a = g(vec![GeoEvent::Cup { pos: 1, left: o }, GeoEvent::Cross { pos: 0, over }]);
                    let b = g(vec![GeoEvent::Cup { pos: 0, left: o }, GeoEvent::Cross { pos: 1, over: over.flip() }]);
                    assert_eq!(tangle_operator(&a, &rep, &lim).unwrap(), tangle_operator(&b, &rep, &lim).unwrap());
                }
            }
        }
    }

    #[test]
    fn reidemeister_three_mixed() {
        let rep = fundamental_rep(AlgebraSpec::new(2).unwrap());
        let lim = ResourceLimits::unlimited();
        let orients = [Orient::Down, Orient::Up];
        for &a in &orients {
            for &b in &orients {
                for &c in &orients {
                    // every height order of the strands a, b, c
                    for h in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                        let ov = |l: usize, r: usize| if h[l] > h[r] { Over::Left } else { Over::Right };
                        let g = |events: Vec<GeoEvent>| GeoWord::new(vec![a, b, c], events).orient().unwrap();
                        let lhs = g(vec![
                            GeoEvent::Cross { pos: 0, over: ov(0, 1) },
                            GeoEvent::Cross { pos: 1, over: ov(0, 2) },
                            GeoEvent::Cross { pos: 0, over: ov(1, 2) },
                        ]);
                        let rhs = g(vec![
                            GeoEvent::Cross { pos: 1, over: ov(1, 2) },
                            GeoEvent::Cross { pos: 0, over: ov(0, 2) },
                            GeoEvent::Cross { pos: 1, over: ov(0, 1) },
                        ]);
                        assert_eq!(tangle_operator(&lhs, &rep, &lim).unwrap(), tangle_operator(&rhs, &rep, &lim).unwrap(), "{a:?}{b:?}{c:?} {h:?}");
                    }
                }
            }
        }
    }
}
