use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Graph, GraphError, Update, UpdateBatch};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StreamMode {
    Ins,
    Del,
    Mix,
}

impl FromStr for StreamMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ins" | "insert" => Ok(StreamMode::Ins),
            "del" | "delete" => Ok(StreamMode::Del),
            "mix" | "mixed" => Ok(StreamMode::Mix),
            other => Err(format!("unknown mode {other:?} (expected ins, del or mix)")),
        }
    }
}

impl fmt::Display for StreamMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StreamMode::Ins => "ins",
            StreamMode::Del => "del",
            StreamMode::Mix => "mix",
        })
    }
}

/// Starting graph plus the batches to replay onto it, in order.
#[derive(Clone, Debug)]
pub struct Workload {
    pub initial: Graph,
    pub batches: Vec<UpdateBatch>,
}

fn numbered(edges: &[(usize, usize)], offset: usize) -> Vec<Update> {
    edges.iter().enumerate().map(|(i, &(u, v))| Update { u, v, index: offset + i }).collect()
}

/// Builds an update stream from `g`.
///
/// `Ins` starts from the empty graph and inserts a random permutation of the
/// edges in consecutive chunks; `Del` deletes a permutation from the full
/// graph; `Mix` pre-removes `batch_size / 2` random edges, then emits one
/// batch re-inserting them together with `batch_size / 2` deletions of other
/// edges. The stream depends only on `g` and `seed`.
pub fn generate_batches(g: &Graph, mode: StreamMode, batch_size: usize, seed: u64) -> Result<Workload, GraphError> {
    if batch_size == 0 {
        return Err(GraphError::ZeroBatchSize);
    }
    let mut edges = g.edges();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    edges.shuffle(&mut rng);

    match mode {
        StreamMode::Ins => Ok(Workload {
            initial: Graph::new(g.num_vertices()),
            batches: edges
                .chunks(batch_size)
                .map(|c| UpdateBatch { insertions: numbered(c, 0), deletions: Vec::new() })
                .collect(),
        }),
        StreamMode::Del => Ok(Workload {
            initial: g.clone(),
            batches: edges
                .chunks(batch_size)
                .map(|c| UpdateBatch { insertions: Vec::new(), deletions: numbered(c, 0) })
                .collect(),
        }),
        StreamMode::Mix => {
            let half = batch_size / 2;
            if 2 * half > edges.len() {
                return Err(GraphError::MixTooLarge { batch_size, needed: 2 * half, available: edges.len() });
            }
            let (ins, rest) = edges.split_at(half);
            let del = &rest[..half];
            let mut initial = g.clone();
            for &(u, v) in ins {
                initial.remove_edge(u, v);
            }
            Ok(Workload {
                initial,
                batches: vec![UpdateBatch { insertions: numbered(ins, 0), deletions: numbered(del, half) }],
            })
        }
    }
}
