use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::ops::{poly_div_exact, poly_gcd, to_poly};
use super::{LaurentPoly, RingError};

/// Quotient of Laurent polynomials in reduced form: the denominator has
/// lowest exponent 0 and positive leading coefficient, and numerator and
/// denominator share no nonunit factor (polynomial or integer).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn zero() -> Self {
        RationalFunction { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        RationalFunction { num: LaurentPoly::one(), den: LaurentPoly::one() }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial this equals, if any.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (nl, nc) = to_poly(&num);
        let (dl, dc) = to_poly(&den);
        let g = poly_gcd(&nc, &dc);
        let (mut nc, mut dc) = if g.len() > 1 {
            (poly_div_exact(&nc, &g).unwrap(), poly_div_exact(&dc, &g).unwrap())
        } else {
            (nc, dc)
        };
        let c = nc.iter().chain(dc.iter()).fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let sign = if dc.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
        let c = c * sign;
        if !c.is_one() {
            for x in nc.iter_mut().chain(dc.iter_mut()) {
                *x = &*x / &c;
            }
        }
        RationalFunction {
            num: LaurentPoly::from_dense(nl - dl, nc),
            den: LaurentPoly::from_dense(0, dc),
        }
    }

    pub fn inv(&self) -> Result<Self, RingError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn bar(&self) -> Self {
        Self::reduce(self.num.bar(), self.den.bar())
    }

    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            self.num.to_text()
        } else {
            format!("({}) / ({})", self.num.to_text(), self.den.to_text())
        }
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::reduce(p, LaurentPoly::one())
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c).into()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({})", self.to_text())
    }
}

impl Add<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::reduce(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::reduce(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RationalFunction> for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; use `inv` for a checked version.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RationalFunction::reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}
