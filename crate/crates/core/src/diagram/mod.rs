//! Oriented link diagrams as Morse slice words, planar diagram codes,
//! generators and theta-curve tangles.

mod braid;
mod geo;
mod pd;
mod pretzel;
mod slice;
mod surgery;
mod theta;

pub use braid::{braid_closure, BraidWord};
pub use geo::{GeoEvent, GeoWord};
pub use pd::{slice_to_pd, GaussCode, LinkDiagram, PdCrossing};
pub use pretzel::{pretzel, pretzel_vertical};
pub use slice::{Event, SliceWord, Trace};
pub use surgery::{connected_sum, mirror};
pub use theta::{theta_cycles, vertex_sum, ThetaTangle};

use serde::{Deserialize, Serialize};

/// Current version of every JSON diagram format.
pub const FORMAT_VERSION: u32 = 1;

/// Direction of a strand relative to slice time (which runs downward).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orient {
    Down,
    Up,
}

impl Orient {
    pub fn flip(self) -> Orient {
        match self {
            Orient::Down => Orient::Up,
            Orient::Up => Orient::Down,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Orient::Down => 0,
            Orient::Up => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Sign::Pos => 0,
            Sign::Neg => 1,
        }
    }
}

/// Which strand of a crossing is on top. At a crossing at position `i`,
/// `Left` is the strand joining top-left to bottom-right and `Right` the one
/// joining top-right to bottom-left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Over {
    Left,
    Right,
}

impl Over {
    pub fn flip(self) -> Over {
        match self {
            Over::Left => Over::Right,
            Over::Right => Over::Left,
        }
    }
}

// Unit direction of each strand in the plane (x right, y up) given its
// orientation; time runs toward negative y.
fn strand_dirs(o_left: Orient, o_right: Orient) -> ((i32, i32), (i32, i32)) {
    let d1 = match o_left {
        Orient::Down => (1, -1),
        Orient::Up => (-1, 1),
    };
    let d2 = match o_right {
        Orient::Down => (-1, -1),
        Orient::Up => (1, 1),
    };
    (d1, d2)
}

/// The over strand of a crossing with the given sign whose strands enter the
/// top of the crossing with orientations `o_left`, `o_right`.
pub fn over_strand(sign: Sign, o_left: Orient, o_right: Orient) -> Over {
    if sign_from_geometry(Over::Left, o_left, o_right) == sign {
        Over::Left
    } else {
        Over::Right
    }
}

/// Sign of a crossing from its geometry: positive when the under strand
/// passes from right to left as seen along the over strand.
pub fn sign_from_geometry(over: Over, o_left: Orient, o_right: Orient) -> Sign {
    let (d1, d2) = strand_dirs(o_left, o_right);
    let (a, b) = match over {
        Over::Left => (d1, d2),
        Over::Right => (d2, d1),
    };
    if a.0 * b.1 - a.1 * b.0 > 0 {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum DiagramError {
    #[error("event {index}: {reason}")]
    InvalidEvent { index: usize, reason: String },
    #[error("expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("operation requires a closed diagram")]
    NotClosed,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("incompatible inputs: {0}")]
    Incompatible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported format version {0}")]
    UnsupportedFormat(u32),
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn down_down_positive_has_right_strand_over() {
        assert_eq!(over_strand(Sign::Pos, Orient::Down, Orient::Down), Over::Right);
        assert_eq!(over_strand(Sign::Neg, Orient::Down, Orient::Down), Over::Left);
        // reversing both strands keeps the sign, reversing one flips it
        for over in [Over::Left, Over::Right] {
            assert_eq!(sign_from_geometry(over, Orient::Up, Orient::Up), sign_from_geometry(over, Orient::Down, Orient::Down));
            assert_ne!(sign_from_geometry(over, Orient::Up, Orient::Down), sign_from_geometry(over, Orient::Down, Orient::Down));
        }
    }
}
