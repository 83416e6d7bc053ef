//! Exact k-clique counts under batches of edge updates.
//!
//! Every clique in an acyclic orientation has a unique source. For each
//! vertex set `J` with `2 ≤ |J| < k` the counter stores how many cliques `Q`
//! of size `k − |J|` point entirely into `J`; completing `J` then completes
//! exactly that many k-cliques.

mod brute;
mod counter;

pub use brute::brute_force_count;
pub use counter::{source_of, CliqueCounter};
