use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::RingError;

/// Laurent polynomial in `s` with big integer coefficients. The quantum
/// parameter is `q = s^2`.
///
/// Stored densely: `coeffs[i]` is the coefficient of `s^(lo + i)`. The
/// vector never has zero entries at either end, and the zero polynomial is
/// the empty vector with `lo == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * s^e`.
    pub fn monomial<T: Into<BigInt>>(c: T, e: i64) -> Self {
        Self::from_dense(e, vec![c.into()])
    }

    /// `c * q^e = c * s^(2e)`.
    pub fn q_monomial<T: Into<BigInt>>(c: T, e: i64) -> Self {
        Self::monomial(c, 2 * e)
    }

    pub fn s() -> Self {
        Self::monomial(1, 1)
    }

    pub fn q() -> Self {
        Self::monomial(1, 2)
    }

    pub fn from_dense(lo: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { lo, coeffs };
        p.normalize();
        p
    }

    /// Builds from `(s-exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    /// Builds from `(q-exponent, coefficient)` pairs.
    pub fn from_q_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        Self::from_terms(terms.into_iter().map(|(e, c)| (2 * e, c)))
    }

    fn normalize(&mut self) {
        let end = self.coeffs.iter().rposition(|c| !c.is_zero()).map_or(0, |i| i + 1);
        self.coeffs.truncate(end);
        let start = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        if start > 0 {
            self.coeffs.drain(..start);
            self.lo += start as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest s-exponent (0 for the zero polynomial).
    pub fn min_exp(&self) -> i64 {
        self.lo
    }

    /// Highest s-exponent (`lo - 1` for the zero polynomial).
    pub fn max_exp(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        let i = e - self.lo;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    /// Nonzero terms `(s-exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        let lo = self.lo;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (lo + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub(crate) fn dense(&self) -> (i64, &[BigInt]) {
        (self.lo, &self.coeffs)
    }

    /// Is this a polynomial in `q` (all s-exponents even)?
    pub fn is_q_expressible(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// Multiplies by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { lo: self.lo + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_dense(self.lo, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Substitution `s -> s^-1` (equivalently `q -> q^-1`).
    pub fn bar(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_dense(-self.max_exp(), coeffs)
    }

    /// Substitution `s -> s^k` for `k != 0`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0);
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c.clone())))
    }

    /// Halves all exponents; `None` unless q-expressible. The result is the
    /// same polynomial written in the variable `q` (as a polynomial in `s`).
    pub fn to_q_exponents(&self) -> Option<Self> {
        if !self.is_q_expressible() {
            return None;
        }
        Some(Self::from_terms(self.terms().map(|(e, c)| (e / 2, c.clone()))))
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn eval_i64(&self, s: i64) -> BigInt {
        assert!(s != 0 || self.lo >= 0);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        if self.lo >= 0 {
            acc * BigInt::from(s).pow(self.lo as u32)
        } else {
            // only exact for unit |s|; callers use +-1 or nonnegative lo
            assert!(s == 1 || s == -1);
            acc * BigInt::from(s).pow((-self.lo) as u32)
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Is this `+-s^k` for some k?
    pub fn as_unit(&self) -> Option<(i8, i64)> {
        if self.coeffs.len() == 1 {
            let c = &self.coeffs[0];
            if c.is_one() {
                return Some((1, self.lo));
            }
            if (-c).is_one() {
                return Some((-1, self.lo));
            }
        }
        None
    }

    /// Content (gcd of coefficients), nonnegative.
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Self {
        Self::from_dense(self.lo, self.coeffs.iter().map(|x| x / c).collect())
    }

    /// Equality up to a unit `+-s^k`.
    pub fn equals_up_to_unit(&self, other: &Self) -> bool {
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        let plus = self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == b);
        plus || self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| *a == -b)
    }

    /// Formats in `q` when possible, otherwise in `s`.
    pub fn to_text(&self) -> String {
        if let Some(p) = self.to_q_exponents() {
            p.format_with("q")
        } else {
            self.format_with("s")
        }
    }

    /// Text form with `var` standing for `s`.
    pub fn format_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&a.to_string());
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{a}*{mono}"));
            }
        }
        out
    }

    /// Parses the text format, e.g. `"3*q^-2 + q + 5*q^3"` or `"s^-1 - 2*s"`.
    pub fn parse(text: &str) -> Result<Self, RingError> {
        let bad = || RingError::Parse(text.to_string());
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // split into signed terms; a '-' right after '^' is an exponent sign
        let mut pieces: Vec<String> = Vec::new();
        let mut cur = String::new();
        let chars: Vec<char> = compact.chars().collect();
        for (i, &ch) in chars.iter().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && chars[i - 1] != '^' {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        let mut terms = Vec::new();
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coef_str, mono) = match body.find(['q', 's']) {
                Some(pos) => (&body[..pos], Some(&body[pos..])),
                None => (body, None),
            };
            let coef_str = coef_str.strip_suffix('*').unwrap_or(coef_str);
            let mut coef = if coef_str.is_empty() {
                BigInt::one()
            } else {
                BigInt::from_str(coef_str).map_err(|_| bad())?
            };
            if neg {
                coef = -coef;
            }
            let exp = match mono {
                None => 0,
                Some(m) => {
                    let scale = if m.starts_with('q') { 2 } else { 1 };
                    let rest = &m[1..];
                    let e: i64 = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    e * scale
                }
            };
            terms.push((exp, coef));
        }
        Ok(Self::from_terms(terms))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.format_with("s"))
    }
}

impl FromStr for LaurentPoly {
    type Err = RingError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

/// JSON form: array of `[s_exponent, "coefficient"]` pairs in ascending order.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, String)> = self.terms().map(|(e, c)| (e, c.to_string())).collect();
        pairs.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, String)> = Vec::deserialize(de)?;
        let mut terms = Vec::with_capacity(pairs.len());
        for (e, c) in pairs {
            let c = BigInt::from_str(&c).map_err(serde::de::Error::custom)?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

fn add_impl(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let lo = a.lo.min(b.lo);
    let hi = a.max_exp().max(b.max_exp());
    let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        coeffs[(a.lo - lo) as usize + i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut coeffs[(b.lo - lo) as usize + i];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    LaurentPoly::from_dense(lo, coeffs)
}

fn mul_impl(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    let mut coeffs = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                coeffs[i + j] += x * y;
            }
        }
    }
    LaurentPoly::from_dense(a.lo + b.lo, coeffs)
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(self, rhs)
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(&self, &rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                $body(&self, rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                $body(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_impl(a, b, false));
forward_binop!(Sub, sub, |a, b| add_impl(a, b, true));
forward_binop!(Mul, mul, mul_impl);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = add_impl(self, rhs, false);
    }
}

impl AddAssign<LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self = add_impl(self, &rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = add_impl(self, rhs, true);
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |a, b| a * b)
    }
}
