use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{LaurentPoly, RingError};

/// Order of vanishing at `q = 1`; `Infinite` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum VanishOrder {
    Finite(u32),
    Infinite,
}

impl VanishOrder {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            VanishOrder::Finite(m) => m >= k,
            VanishOrder::Infinite => true,
        }
    }
}

impl fmt::Display for VanishOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VanishOrder::Finite(m) => write!(f, "{m}"),
            VanishOrder::Infinite => f.write_str("inf"),
        }
    }
}

// Dense polynomial helpers on ascending coefficient vectors (index = exponent).

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn is_zero_poly(v: &[BigInt]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Polynomial long division over Z that must be exact. On failure returns the
/// current remainder (a polynomial of the same length as `num`).
pub(crate) fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Result<Vec<BigInt>, Vec<BigInt>> {
    assert!(!den.is_empty() && !den.last().unwrap().is_zero());
    let mut rem: Vec<BigInt> = num.to_vec();
    trim(&mut rem);
    if rem.is_empty() {
        return Ok(Vec::new());
    }
    if rem.len() < den.len() {
        return Err(rem);
    }
    let dl = den.len();
    let lead = den.last().unwrap();
    let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + dl - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lead);
        if !r.is_zero() {
            return Err(rem);
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    if is_zero_poly(&rem) {
        trim(&mut quot);
        Ok(quot)
    } else {
        trim(&mut rem);
        Err(rem)
    }
}

fn poly_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let c = poly_content(v);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x / &c).collect();
    trim(&mut out);
    out
}

/// Pseudo-remainder of `a` by `b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, d) in b.iter().enumerate() {
            r[shift + j] -= &lr * d;
        }
        trim(&mut r);
        let c = poly_content(&r);
        if !c.is_zero() && !c.is_one() {
            for x in r.iter_mut() {
                *x = &*x / &c;
            }
        }
    }
    r
}

/// Gcd in Z[x] (primitive, positive leading coefficient) via primitive
/// pseudo-remainder sequences. Both arguments ascending, not both zero.
pub(crate) fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    let mut g = primitive_part(&x);
    if g.last().is_some_and(|c| c.is_negative()) {
        for c in g.iter_mut() {
            *c = -&*c;
        }
    }
    g
}

/// Splits `p = s^lo * P(s)` with `P(0) != 0`.
pub(crate) fn to_poly(p: &LaurentPoly) -> (i64, Vec<BigInt>) {
    let (lo, c) = p.dense();
    (lo, c.to_vec())
}

/// Exact quotient `p / d`; the error carries the remainder of the long
/// division as a witness.
pub fn exact_divide(p: &LaurentPoly, d: &LaurentPoly) -> Result<LaurentPoly, RingError> {
    if d.is_zero() {
        return Err(RingError::DivisionByZero);
    }
    if p.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let (pl, pc) = to_poly(p);
    let (dl, dc) = to_poly(d);
    match poly_div_exact(&pc, &dc) {
        Ok(q) => Ok(LaurentPoly::from_dense(pl - dl, q)),
        Err(rem) => Err(RingError::NotDivisible { remainder: LaurentPoly::from_dense(pl, rem) }),
    }
}

/// Largest `m` with `(1 - q)^m` dividing `p`, where `p` must be a polynomial
/// in `q = s^2`.
pub fn vanish_order_at_1(p: &LaurentPoly) -> Result<VanishOrder, RingError> {
    let qp = p.to_q_exponents().ok_or(RingError::OddExponents)?;
    if qp.is_zero() {
        return Ok(VanishOrder::Infinite);
    }
    let (_, mut c) = to_poly(&qp);
    let mut m = 0u32;
    loop {
        let sum: BigInt = c.iter().sum();
        if !sum.is_zero() {
            return Ok(VanishOrder::Finite(m));
        }
        // synthetic division by (x - 1)
        let n = c.len();
        let mut quot = vec![BigInt::zero(); n - 1];
        let mut acc = BigInt::zero();
        for k in (1..n).rev() {
            acc += &c[k];
            quot[k - 1] = acc.clone();
        }
        c = quot;
        m += 1;
    }
}

fn q_poly(coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_q_terms(coeffs.iter().enumerate().map(|(i, &c)| (i as i64, c)))
}

/// The displayed product polynomial from the pretzel computation, expanded,
/// in the variable `q`.
pub fn paper_polynomial() -> LaurentPoly {
    let factors: [(Vec<i64>, u32); 12] = [
        (vec![0, 0, 0, 0, 0, 0, 0, 0, 1], 1),
        (vec![-1, 1], 11),
        (vec![1, 1], 11),
        (vec![1, 0, 1], 3),
        (vec![1, -1, 1], 3),
        (vec![1, 1, 1], 3),
        (vec![1, 0, 0, 0, 1], 2),
        (vec![1, 0, -1, 0, 1], 1),
        (vec![1, -1, 1, -1, 1, -1, 1], 2),
        (vec![1, 1, 1, 1, 1, 1, 1], 2),
        (vec![1, 0, 0, 0, 0, 0, 0, 0, 1], 1),
        (vec![1, 0, -1, 0, 1, 0, -1, 0, 1, 0, -1, 0, 1], 1),
    ];
    factors.iter().map(|(c, e)| q_poly(c).pow(*e)).product()
}

/// Does `a == +-q^m * b` or `a == +-q^m * bar(b)` hold for some `m`?
pub fn equal_up_to_unit_and_inversion(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    a.equals_up_to_unit(b) || a.equals_up_to_unit(&b.bar())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        LaurentPoly::parse(s).unwrap()
    }

    #[test]
    fn divide_examples() {
        assert_eq!(exact_divide(&p("q^2 - 1"), &p("q - 1")).unwrap(), p("q + 1"));
        let x = p("3*q^-2 + q + 5*q^3");
        assert_eq!(exact_divide(&x, &LaurentPoly::one()).unwrap(), x);
        assert_eq!(exact_divide(&p("q^-3 - q^-1"), &p("q^-1 + 1")).unwrap(), p("q^-2 - q^-1"));
        match exact_divide(&p("q^2 + 1"), &p("q - 1")) {
            Err(RingError::NotDivisible { remainder }) => assert!(!remainder.is_zero()),
            other => panic!("{other:?}"),
        }
        assert!(exact_divide(&p("q^2 + 1"), &p("2*q + 2")).is_err());
        assert!(matches!(exact_divide(&p("q"), &LaurentPoly::zero()), Err(RingError::DivisionByZero)));
    }

    #[test]
    fn vanish_examples() {
        let x = p("1 - q").pow(2) * p("1 + q");
        assert_eq!(vanish_order_at_1(&x).unwrap(), VanishOrder::Finite(2));
        assert_eq!(vanish_order_at_1(&LaurentPoly::zero()).unwrap(), VanishOrder::Infinite);
        assert_eq!(vanish_order_at_1(&p("q^-5 + 2")).unwrap(), VanishOrder::Finite(0));
        assert!(matches!(vanish_order_at_1(&p("s")), Err(RingError::OddExponents)));
    }

    // Independent expansion: multiply the factors as i128 coefficient lists.
    fn naive_product() -> Vec<i128> {
        fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
            let mut out = vec![0i128; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        }
        let mut acc = vec![1i128];
        let list: Vec<(Vec<i128>, usize)> = vec![
            (vec![0, 0, 0, 0, 0, 0, 0, 0, 1], 1),
            (vec![-1, 1], 11),
            (vec![1, 1], 11),
            (vec![1, 0, 1], 3),
            (vec![1, -1, 1], 3),
            (vec![1, 1, 1], 3),
            (vec![1, 0, 0, 0, 1], 2),
            (vec![1, 0, -1, 0, 1], 1),
            (vec![1, -1, 1, -1, 1, -1, 1], 2),
            (vec![1, 1, 1, 1, 1, 1, 1], 2),
            (vec![1, 0, 0, 0, 0, 0, 0, 0, 1], 1),
            (vec![1, 0, -1, 0, 1, 0, -1, 0, 1, 0, -1, 0, 1], 1),
        ];
        for (f, e) in list {
            for _ in 0..e {
                acc = mul(&acc, &f);
            }
        }
        acc
    }

    #[test]
    fn paper_polynomial_expansion() {
        let pp = paper_polynomial();
        let naive = naive_product();
        for (i, c) in naive.iter().enumerate() {
            assert_eq!(pp.coeff(2 * i as i64), BigInt::from(*c), "q^{i}");
        }
        assert_eq!(pp.min_exp(), 16);
        assert_eq!(pp.max_exp(), 2 * (naive.len() as i64 - 1));
        assert_eq!(pp.coeff(16), BigInt::from(-1));
        assert_eq!(vanish_order_at_1(&pp).unwrap(), VanishOrder::Finite(11));
        assert!(pp.eval_at_one().is_zero());
        let reduced = exact_divide(&pp, &p("1 - q").pow(11)).unwrap();
        assert!(!reduced.eval_at_one().is_zero());
    }

    #[test]
    fn gcd_basic() {
        let a = p("q^2 - 1");
        let b = p("q^2 + 2*q + 1");
        let (_, ac) = to_poly(&a.to_q_exponents().unwrap());
        let (_, bc) = to_poly(&b.to_q_exponents().unwrap());
        let g = poly_gcd(&ac, &bc);
        assert_eq!(g, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn unit_and_inversion() {
        let a = p("1 + 2*q");
        assert!(equal_up_to_unit_and_inversion(&p("-q^5 - 2*q^6"), &a));
        assert!(equal_up_to_unit_and_inversion(&p("2 + q"), &a));
        assert!(!equal_up_to_unit_and_inversion(&p("1 + 3*q"), &a));
    }
}
