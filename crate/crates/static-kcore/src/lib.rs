//! Static k-core decompositions: exact bucket peeling, used as the oracle
//! everywhere else, and round-based approximate peeling with geometric
//! thresholds.

mod approx;
mod bucket;
mod exact;

pub use approx::{approx_kcore_static, ApproxKcore};
pub use bucket::BucketQueue;
pub use exact::exact_kcore;
