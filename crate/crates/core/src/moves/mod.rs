//! Local moves on link diagrams: crossing changes, delta and clasp-pass
//! moves, C_k link models attached by bands, and blackboard cables.

mod cable;
mod model;

pub use cable::parallel_cable;
pub use model::{band_sum, c1_model, ck_model, clasp_pass, crossing_change, delta_move, double, LinkModel, MoveError, MoveSite, MAX_MODEL_ORDER};
pub(crate) use cable::cable_crossing;
