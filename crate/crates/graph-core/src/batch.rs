use serde::{Deserialize, Serialize};

use crate::{canonical, FastMap, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpKind {
    Insert,
    Delete,
}

/// A raw, possibly redundant edge operation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeOp {
    pub kind: OpKind,
    pub u: usize,
    pub v: usize,
    /// Position in the raw list is used when absent.
    pub timestamp: Option<u64>,
}

impl EdgeOp {
    pub fn insert(u: usize, v: usize) -> Self {
        EdgeOp { kind: OpKind::Insert, u, v, timestamp: None }
    }

    pub fn delete(u: usize, v: usize) -> Self {
        EdgeOp { kind: OpKind::Delete, u, v, timestamp: None }
    }

    pub fn at(mut self, t: u64) -> Self {
        self.timestamp = Some(t);
        self
    }
}

/// One surviving update. `index` orders updates within their batch.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Update {
    pub u: usize,
    pub v: usize,
    pub index: usize,
}

/// Unique updates that are valid against the graph they will be applied to.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpdateBatch {
    pub insertions: Vec<Update>,
    pub deletions: Vec<Update>,
}

impl UpdateBatch {
    pub fn len(&self) -> usize {
        self.insertions.len() + self.deletions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.insertions.is_empty() && self.deletions.is_empty()
    }

    /// Builds a batch directly; indices follow the given order, insertions first.
    pub fn from_edges(insertions: &[(usize, usize)], deletions: &[(usize, usize)]) -> Self {
        let mut index = 0;
        let mut wrap = |&(u, v): &(usize, usize)| {
            index += 1;
            Update { u, v, index: index - 1 }
        };
        let insertions = insertions.iter().map(&mut wrap).collect();
        let deletions = deletions.iter().map(&mut wrap).collect();
        UpdateBatch { insertions, deletions }
    }

    /// Raw op list in index order, suitable for writing out or re-preprocessing.
    pub fn to_ops(&self) -> Vec<EdgeOp> {
        let mut tagged: Vec<(usize, EdgeOp)> = self
            .insertions
            .iter()
            .map(|e| (e.index, EdgeOp::insert(e.u, e.v)))
            .chain(self.deletions.iter().map(|e| (e.index, EdgeOp::delete(e.u, e.v))))
            .collect();
        tagged.sort_by_key(|&(i, _)| i);
        tagged.into_iter().map(|(_, op)| op).collect()
    }

    /// Endpoints touched by the batch, sorted and deduplicated.
    pub fn endpoints(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.insertions.iter().chain(&self.deletions).flat_map(|e| [e.u, e.v]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Largest vertex id referenced, if any.
    pub fn max_vertex(&self) -> Option<usize> {
        self.insertions.iter().chain(&self.deletions).map(|e| e.u.max(e.v)).max()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Preprocessed {
    pub batch: UpdateBatch,
    pub dropped: usize,
}

/// Normalises raw operations against `g`.
///
/// For every undirected edge only the op with the latest timestamp survives
/// (later list position wins ties). Self-loops, ids outside the graph,
/// insertions of present edges and deletions of absent edges are dropped.
pub fn preprocess_batch(raw: &[EdgeOp], g: &Graph) -> Preprocessed {
    let n = g.num_vertices();
    let mut latest: FastMap<(usize, usize), (u64, usize)> = FastMap::default();
    for (pos, op) in raw.iter().enumerate() {
        if op.u == op.v || op.u >= n || op.v >= n {
            continue;
        }
        let stamp = (op.timestamp.unwrap_or(pos as u64), pos);
        latest
            .entry(canonical(op.u, op.v))
            .and_modify(|cur| {
                if stamp > *cur {
                    *cur = stamp;
                }
            })
            .or_insert(stamp);
    }

    let mut kept: Vec<usize> = latest
        .into_values()
        .map(|(_, pos)| pos)
        .filter(|&pos| {
            let op = &raw[pos];
            match op.kind {
                OpKind::Insert => !g.has_edge(op.u, op.v),
                OpKind::Delete => g.has_edge(op.u, op.v),
            }
        })
        .collect();
    kept.sort_unstable();

    let mut batch = UpdateBatch::default();
    for (index, &pos) in kept.iter().enumerate() {
        let op = raw[pos];
        let upd = Update { u: op.u, v: op.v, index };
        match op.kind {
            OpKind::Insert => batch.insertions.push(upd),
            OpKind::Delete => batch.deletions.push(upd),
        }
    }
    Preprocessed { dropped: raw.len() - kept.len(), batch }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_on_empty_graph() {
        let g = Graph::new(3);
        let raw = [EdgeOp::insert(1, 2).at(0), EdgeOp::delete(1, 2).at(1)];
        let p = preprocess_batch(&raw, &g);
        assert!(p.batch.is_empty());
        assert_eq!(p.dropped, 2);
    }

    #[test]
    fn undirected_dedup() {
        let g = Graph::new(3);
        let p = preprocess_batch(&[EdgeOp::insert(1, 2), EdgeOp::insert(2, 1)], &g);
        assert_eq!(p.batch.insertions.len(), 1);
        assert_eq!(p.batch.deletions.len(), 0);
        assert_eq!(p.dropped, 1);
    }

    #[test]
    fn self_loop_dropped() {
        let g = Graph::new(3);
        let p = preprocess_batch(&[EdgeOp::insert(1, 1)], &g);
        assert!(p.batch.is_empty());
        assert_eq!(p.dropped, 1);
    }

    #[test]
    fn explicit_timestamps_override_position() {
        let g = Graph::from_edges(3, [(0, 1)]);
        // The insertion carries the later stamp, so it wins and is invalid.
        let raw = [EdgeOp::insert(0, 1).at(9), EdgeOp::delete(0, 1).at(3)];
        assert!(preprocess_batch(&raw, &g).batch.is_empty());
        let raw = [EdgeOp::insert(0, 1).at(1), EdgeOp::delete(0, 1).at(3)];
        assert_eq!(preprocess_batch(&raw, &g).batch.deletions.len(), 1);
    }

    #[test]
    fn indices_follow_surviving_order() {
        let g = Graph::from_edges(5, [(3, 4)]);
        let raw = [EdgeOp::insert(0, 1), EdgeOp::insert(2, 2), EdgeOp::delete(3, 4), EdgeOp::insert(1, 2)];
        let b = preprocess_batch(&raw, &g).batch;
        assert_eq!(b.insertions, vec![Update { u: 0, v: 1, index: 0 }, Update { u: 1, v: 2, index: 2 }]);
        assert_eq!(b.deletions, vec![Update { u: 3, v: 4, index: 1 }]);
    }
}
