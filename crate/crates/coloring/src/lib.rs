//! Two colorings maintained through the framework hooks.
//!
//! [`ExplicitColoring`] gives every level its own palette sized at twice the
//! level's up-degree bound, so a vertex always finds a free color quickly.
//! [`ForestColoring`] splits the oriented edges into forests and derives a
//! color at query time from depth parities.

mod explicit;
mod implicit;

pub use explicit::{ExplicitColoring, Palettes};
pub use implicit::{ForestColoring, ImplicitColor};
