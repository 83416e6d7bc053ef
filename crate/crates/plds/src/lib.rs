//! Batch-dynamic level data structure maintaining a `(2+3/λ)(1+δ)`-approximate
//! k-core decomposition.
//!
//! Vertices live on levels grouped into blocks of equal size. Two degree
//! invariants are restored after every batch:
//!
//! * upper bound: a vertex below the top level has at most
//!   `(2+3/λ)(1+δ)^g` neighbors on its own level or higher, `g` being its group;
//! * lower bound: a vertex above level 0 has at least `(1+δ)^g'` neighbors on
//!   the level just below it or higher, `g'` being the group of that lower level.
//!
//! Insertions push violators up one level at a time; deletions drop each
//! violator straight to its desire level.

mod error;
mod invariants;
mod params;
mod structure;

pub use error::PldsError;
pub use invariants::{InvariantReport, Violation};
pub use params::{Geometry, PldsParams};
pub use structure::{Move, MoveOrder, Phase, Plds, VertexUpdateOutcome};

pub mod fixtures;
