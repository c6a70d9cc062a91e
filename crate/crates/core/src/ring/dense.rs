use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::LaurentPoly;

/// Integer coefficient type for the contraction hot path. Fixed-width types
/// report overflow instead of wrapping, so callers can retry wider.
pub trait Coeff: Clone + Send + Sync + std::fmt::Debug + PartialEq {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn add_mul(&mut self, a: &Self, b: &Self) -> Option<()>;
    fn add_to(&mut self, a: &Self) -> Option<()>;
}

impl Coeff for i64 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    #[inline]
    fn add_mul(&mut self, a: &Self, b: &Self) -> Option<()> {
        *self = self.checked_add(a.checked_mul(*b)?)?;
        Some(())
    }
    #[inline]
    fn add_to(&mut self, a: &Self) -> Option<()> {
        *self = self.checked_add(*a)?;
        Some(())
    }
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    #[inline]
    fn add_mul(&mut self, a: &Self, b: &Self) -> Option<()> {
        *self = self.checked_add(a.checked_mul(*b)?)?;
        Some(())
    }
    #[inline]
    fn add_to(&mut self, a: &Self) -> Option<()> {
        *self = self.checked_add(*a)?;
        Some(())
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn add_mul(&mut self, a: &Self, b: &Self) -> Option<()> {
        *self += a * b;
        Some(())
    }
    fn add_to(&mut self, a: &Self) -> Option<()> {
        *self += a;
        Some(())
    }
}

/// Dense Laurent polynomial in one variable over a hot-path coefficient type.
/// Exponents are in whatever variable the caller fixes; conversion to
/// `LaurentPoly` takes an exponent scale.
#[derive(Clone, Debug, PartialEq)]
pub struct DensePoly<C> {
    pub lo: i32,
    pub c: Vec<C>,
}

impl<C: Coeff> DensePoly<C> {
    pub fn zero() -> Self {
        DensePoly { lo: 0, c: Vec::new() }
    }

    pub fn monomial(coef: C, e: i32) -> Self {
        let mut p = DensePoly { lo: e, c: vec![coef] };
        p.trim();
        p
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn trim(&mut self) {
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let start = self.c.iter().position(|x| !x.is_zero()).unwrap_or(self.c.len());
        if start > 0 {
            self.c.drain(..start);
            self.lo += start as i32;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
    }

    fn ensure_range(&mut self, lo: i32, hi: i32) {
        if self.c.is_empty() {
            self.lo = lo;
            self.c = vec![C::zero(); (hi - lo + 1) as usize];
            return;
        }
        if lo < self.lo {
            let extra = (self.lo - lo) as usize;
            let mut v = vec![C::zero(); extra];
            v.append(&mut self.c);
            self.c = v;
            self.lo = lo;
        }
        let cur_hi = self.lo + self.c.len() as i32 - 1;
        if hi > cur_hi {
            self.c.resize((hi - self.lo + 1) as usize, C::zero());
        }
    }

    /// `self += a * b`; `None` on coefficient overflow.
    pub fn add_mul(&mut self, a: &Self, b: &Self) -> Option<()> {
        if a.is_zero() || b.is_zero() {
            return Some(());
        }
        let lo = a.lo + b.lo;
        let hi = lo + (a.c.len() + b.c.len() - 2) as i32;
        self.ensure_range(lo, hi);
        let off = (lo - self.lo) as usize;
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let row = &mut self.c[off + i..];
            for (j, y) in b.c.iter().enumerate() {
                row[j].add_mul(x, y)?;
            }
        }
        Some(())
    }

    pub fn add_assign(&mut self, a: &Self) -> Option<()> {
        if a.is_zero() {
            return Some(());
        }
        let hi = a.lo + a.c.len() as i32 - 1;
        self.ensure_range(a.lo, hi);
        let off = (a.lo - self.lo) as usize;
        for (i, x) in a.c.iter().enumerate() {
            self.c[off + i].add_to(x)?;
        }
        Some(())
    }

    pub fn mul(&self, b: &Self) -> Option<Self> {
        let mut out = Self::zero();
        out.add_mul(self, b)?;
        out.trim();
        Some(out)
    }

    /// Converts a `LaurentPoly` whose s-exponents are all multiples of
    /// `scale`; exponents are divided by `scale`.
    pub fn from_laurent(p: &LaurentPoly, scale: i64) -> Option<Self> {
        if p.is_zero() {
            return Some(Self::zero());
        }
        let lo = p.min_exp();
        if lo % scale != 0 {
            return None;
        }
        let hi = p.max_exp();
        let mut c = vec![C::zero(); ((hi - lo) / scale + 1) as usize];
        for (e, x) in p.terms() {
            if e % scale != 0 {
                return None;
            }
            c[((e - lo) / scale) as usize] = C::from_big(x)?;
        }
        Some(DensePoly { lo: (lo / scale) as i32, c })
    }

    /// Converts back, multiplying exponents by `scale`.
    pub fn to_laurent(&self, scale: i64) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| ((self.lo as i64 + i as i64) * scale, x.to_big())),
        )
    }

    pub fn convert<D: Coeff>(&self) -> Option<DensePoly<D>> {
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(D::from_big(&x.to_big())?);
        }
        Some(DensePoly { lo: self.lo, c })
    }
}
