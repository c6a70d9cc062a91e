//! Classical invariants: linking numbers, Gauss-diagram formulas for the
//! order 2 and 3 knot invariants, and brute-force oracles (Conway skein,
//! Kauffman bracket) used to cross-check everything else.

mod bracket;
mod conway;
mod gauss;

pub use bracket::{bracket_to_q, jones_derivatives, kauffman_bracket, BRACKET_MAX_CROSSINGS};
pub use conway::{conway_a2, CONWAY_MAX_CROSSINGS};
pub use gauss::{linking_number, linking_matrix, v2, v3, ArrowDiagram, GaussDiagram};

use crate::diagram::DiagramError;

#[derive(Debug, Clone, thiserror::Error)]
pub enum ClassicalError {
    #[error("expected a knot, got {0} components")]
    NotAKnot(usize),
    #[error("component index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("diagram has {crossings} crossings, oracle limit is {limit}")]
    TooLarge { crossings: usize, limit: usize },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}
