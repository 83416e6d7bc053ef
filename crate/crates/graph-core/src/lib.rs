//! Undirected graph storage and the batch plumbing shared by every dynamic
//! structure in the workspace.
//!
//! Vertices are dense `usize` ids in `[0, n)`. Updates arrive as raw
//! [`EdgeOp`]s, get normalised by [`preprocess_batch`] into an
//! [`UpdateBatch`] of unique, valid insertions and deletions, and are then
//! handed to the level structure.

mod batch;
mod error;
mod graph;
mod io;
mod stream;

pub use batch::{preprocess_batch, EdgeOp, OpKind, Preprocessed, Update, UpdateBatch};
pub use error::GraphError;
pub use graph::{canonical, Edge, Graph};
pub use io::{load_edge_list, parse_edge_list, read_batch_csv, write_batch_csv};
pub use stream::{generate_batches, StreamMode, Workload};

/// Hash set used for adjacency throughout the workspace.
pub type FastSet<T> = rustc_hash::FxHashSet<T>;
/// Hash map companion of [`FastSet`].
pub type FastMap<K, V> = rustc_hash::FxHashMap<K, V>;
