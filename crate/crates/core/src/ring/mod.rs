//! Exact arithmetic over `Z[s, s^-1]` with `q = s^2`.

mod dense;
mod laurent;
mod ops;
mod rational;
mod sparse;

pub use dense::{Coeff, DensePoly};
pub use laurent::LaurentPoly;
pub use ops::{equal_up_to_unit_and_inversion, exact_divide, paper_polynomial, vanish_order_at_1, VanishOrder};
pub use rational::RationalFunction;
pub use sparse::{RingElem, SparseOperator};

#[derive(Debug, Clone, thiserror::Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not divisible, remainder {remainder}")]
    NotDivisible { remainder: LaurentPoly },
    #[error("polynomial has odd powers of s and is not a polynomial in q")]
    OddExponents,
    #[error("cannot parse polynomial: {0:?}")]
    Parse(String),
}
