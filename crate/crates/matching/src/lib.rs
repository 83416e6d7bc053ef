//! Maximal matching maintained through the framework hooks.
//!
//! Each vertex keeps `I_v`, its unmatched in-neighbors, so a vertex that
//! loses its mate can look for a replacement among in-neighbors without
//! scanning its whole (possibly huge) in-neighborhood.

mod state;
mod static_mm;

pub use state::MatchState;
pub use static_mm::{is_maximal_matching, static_maximal_matching};
