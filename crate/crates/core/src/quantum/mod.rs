//! Quantum invariants of `U_q(sl_N)` type: the fundamental R-matrix, a
//! transfer-matrix evaluator for slice words, Hecke-algebra idempotents and
//! colored invariants by cabling.

mod colored;
mod engine;
mod hecke;
mod rmatrix;

pub use colored::{
    cabled_framed_value, colored_invariant, colored_invariant_cabled, colored_invariant_with, compare_knots, compare_with, curl_scalar,
    fundamental_invariant, ColoredRep, ComparisonReport, EvaluationReport,
};
pub use hecke::{standard_tableaux, young_idempotent, HeckeElement, Perm};
pub use engine::{evaluate_slice, evaluate_slice_with, tangle_operator, LocalRep, ResourceLimits};
pub use rmatrix::{fundamental_r, fundamental_r_inv, fundamental_rep, CUP_WEIGHT_SIGN};

use serde::{Deserialize, Serialize};

use crate::classical::ClassicalError;
use crate::diagram::DiagramError;
use crate::ring::RingError;

/// The Lie algebra `sl_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSpec {
    n: usize,
}

impl AlgebraSpec {
    pub fn new(n: usize) -> Result<Self, QuantumError> {
        if n < 2 {
            return Err(QuantumError::InvalidSpec(format!("sl_N needs N >= 2, got {n}")));
        }
        Ok(AlgebraSpec { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// A partition of `r <= 3` with a chosen standard tableau (rows of entries
/// `1..=r`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorSpec {
    partition: Vec<usize>,
    tableau: Vec<Vec<usize>>,
}

pub const MAX_COLOR_BOXES: usize = 3;

impl ColorSpec {
    /// The partition with its first standard tableau in enumeration order.
    pub fn new(partition: Vec<usize>) -> Result<Self, QuantumError> {
        let tableau = hecke::standard_tableaux(&partition)?.remove(0);
        Ok(ColorSpec { partition, tableau })
    }

    pub fn with_tableau(tableau: Vec<Vec<usize>>) -> Result<Self, QuantumError> {
        let partition: Vec<usize> = tableau.iter().map(|r| r.len()).collect();
        if !hecke::standard_tableaux(&partition)?.contains(&tableau) {
            return Err(QuantumError::InvalidSpec(format!("{tableau:?} is not a standard tableau")));
        }
        Ok(ColorSpec { partition, tableau })
    }

    pub fn fundamental() -> Self {
        ColorSpec { partition: vec![1], tableau: vec![vec![1]] }
    }

    /// Parses `"2,1"`.
    pub fn parse(text: &str) -> Result<Self, QuantumError> {
        let parts: Result<Vec<usize>, _> = text.split(',').map(|t| t.trim().parse::<usize>()).collect();
        Self::new(parts.map_err(|_| QuantumError::InvalidSpec(format!("bad partition {text:?}")))?)
    }

    pub fn partition(&self) -> &[usize] {
        &self.partition
    }

    pub fn tableau(&self) -> &[Vec<usize>] {
        &self.tableau
    }

    pub fn boxes(&self) -> usize {
        self.partition.iter().sum()
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum QuantumError {
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("expected a knot, got {0} components")]
    NotAKnot(usize),
    #[error("expected a closed diagram")]
    NotClosed,
    #[error("quantum dimension vanishes")]
    ZeroDimension,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
}
