use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::ClassicalError;
use crate::diagram::{slice_to_pd, SliceWord};
use crate::ring::{LaurentPoly, RingError};

pub const BRACKET_MAX_CROSSINGS: usize = 14;

/// Writhe-normalized Kauffman bracket `(-A^3)^(-w) <D>` with `<O> = 1`.
/// The result is a Laurent polynomial in `A` (stored in the `s` slot).
pub fn kauffman_bracket(s: &SliceWord) -> Result<LaurentPoly, ClassicalError> {
    let d = slice_to_pd(s)?;
    let n = d.crossings().len();
    if n > BRACKET_MAX_CROSSINGS {
        return Err(ClassicalError::TooLarge { crossings: n, limit: BRACKET_MAX_CROSSINGS });
    }
    let max_edge = d.components().iter().flatten().copied().max().unwrap_or(0);
    // (A-exponent, loop count) -> number of states
    let mut states: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    let mut parent = vec![0usize; max_edge + 1];
    for mask in 0u32..(1 << n) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut a_exp = 0i64;
        for (i, x) in d.crossings().iter().enumerate() {
            let [a, b, c, e] = x.slots;
            // A-smoothing joins the slots (a, b) and (c, e)
            if mask >> i & 1 == 0 {
                a_exp += 1;
                join(&mut parent, a, b);
                join(&mut parent, c, e);
            } else {
                a_exp -= 1;
                join(&mut parent, a, e);
                join(&mut parent, b, c);
            }
        }
        let loops = d.components().iter().flatten().filter(|&&e| root(&mut parent, e) == e).count();
        *states.entry((a_exp, loops)).or_default() += 1;
    }
    // loop value -A^2 - A^-2
    let delta = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
    let mut total = LaurentPoly::zero();
    for ((e, loops), count) in states {
        total += LaurentPoly::monomial(count, e) * delta.pow(loops as u32 - 1);
    }
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(total * LaurentPoly::monomial(sign, -3 * w))
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn join(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (root(parent, a), root(parent, b));
    if ra != rb {
        parent[ra] = rb;
    }
}

/// Rewrites a bracket polynomial in `q` through `A^2 = -q^eps` (`eps = ±1`).
/// The result is a polynomial in `q`, i.e. has even `s`-exponents.
pub fn bracket_to_q(f: &LaurentPoly, eps: i64) -> Result<LaurentPoly, RingError> {
    if !f.is_q_expressible() {
        return Err(RingError::OddExponents);
    }
    Ok(LaurentPoly::from_q_terms(f.terms().map(|(e, c)| {
        let k = e / 2;
        let c: BigInt = if k.rem_euclid(2) == 0 { c.clone() } else { -c.clone() };
        (eps * k, c)
    })))
}

/// `(V''(1), V'''(1))` of the Jones polynomial `V(t)`, `t = A^-4`, of a knot
/// whose normalized bracket is `f`.
pub fn jones_derivatives(f: &LaurentPoly) -> (BigInt, BigInt) {
    let mut d2 = BigInt::from(0);
    let mut d3 = BigInt::from(0);
    for (e, c) in f.terms() {
        assert!(e % 4 == 0, "bracket of a knot has exponents divisible by 4");
        let k = BigInt::from(-e / 4);
        d2 += c * &k * (&k - 1);
        d3 += c * &k * (&k - 1) * (&k - 2);
    }
    (d2, d3)
}
