pub mod ring;
pub mod classical;
pub mod diagram;
pub mod moves;
pub mod quantum;
pub mod surfaces;
