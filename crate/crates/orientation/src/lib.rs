//! Edge orientation derived from vertex levels.
//!
//! Every edge points from the endpoint with the smaller `(level, id)` pair to
//! the one with the larger pair, so the directed graph is always acyclic and a
//! vertex's out-edges all lead to levels at or above its own.

use graph_core::{canonical, Edge, FastMap, Graph, UpdateBatch};
use rayon::prelude::*;

const PAR_CUTOFF: usize = 1024;

/// Orients `{u, v}` under `levels`, returning `(tail, head)`.
pub fn orient_edge(u: usize, v: usize, levels: &[usize]) -> (usize, usize) {
    if (levels[u], u) < (levels[v], v) {
        (u, v)
    } else {
        (v, u)
    }
}

/// Result of one orientation pass.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrientUpdate {
    /// Flipped edges, each in its orientation before the flip.
    pub flips: Vec<(usize, usize)>,
    /// Batch insertions in their post-batch orientation.
    pub insertions: Vec<(usize, usize)>,
    /// Batch deletions in their pre-batch orientation.
    pub deletions: Vec<(usize, usize)>,
}

/// Direction of every stored edge, keyed by `(min, max)`; `true` means `max → min`.
#[derive(Clone, Debug, Default)]
pub struct OrientationMap {
    dir: FastMap<Edge, bool>,
    parallel: bool,
}

/// Maps are equal when they orient the same edges the same way.
impl PartialEq for OrientationMap {
    fn eq(&self, other: &Self) -> bool {
        self.dir == other.dir
    }
}

impl Eq for OrientationMap {}

impl OrientationMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Orients every edge of `g` from scratch.
    pub fn from_levels(g: &Graph, levels: &[usize]) -> Self {
        let dir = g.edges().into_iter().map(|(a, b)| ((a, b), orient_edge(a, b, levels).0 != a)).collect();
        OrientationMap { dir, parallel: false }
    }

    pub fn set_parallel(&mut self, on: bool) {
        self.parallel = on;
    }

    pub fn len(&self) -> usize {
        self.dir.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dir.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.dir.contains_key(&canonical(u, v))
    }

    /// Stored orientation of `{u, v}` as `(tail, head)`.
    pub fn direction(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        let (a, b) = canonical(u, v);
        self.dir.get(&(a, b)).map(|&rev| if rev { (b, a) } else { (a, b) })
    }

    /// All directed edges, sorted.
    pub fn directed_edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            self.dir.iter().map(|(&(a, b), &rev)| if rev { (b, a) } else { (a, b) }).collect();
        out.sort_unstable();
        out
    }

    pub fn out_degrees(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0; n];
        for (t, _) in self.directed_edges() {
            deg[t] += 1;
        }
        deg
    }

    /// Out-neighbor lists, each sorted.
    pub fn out_adjacency(&self, n: usize) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); n];
        for (t, h) in self.directed_edges() {
            adj[t].push(h);
        }
        adj
    }

    /// Kahn's algorithm over the stored directions.
    pub fn is_acyclic(&self, n: usize) -> bool {
        let adj = self.out_adjacency(n);
        let mut indeg = vec![0usize; n];
        for heads in &adj {
            for &h in heads {
                indeg[h] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &h in &adj[v] {
                indeg[h] -= 1;
                if indeg[h] == 0 {
                    stack.push(h);
                }
            }
        }
        seen == n
    }

    /// Stored edges whose direction disagrees with `levels`, in stored orientation.
    pub fn disagreements(&self, levels: &[usize]) -> Vec<(usize, usize)> {
        self.directed_edges().into_iter().filter(|&(t, h)| orient_edge(t, h, levels) != (t, h)).collect()
    }

    /// Brings the map up to date after a level-structure batch.
    ///
    /// Deletions are read off before anything changes, searched edges that
    /// are still stored are re-checked against the new levels, and insertions
    /// are oriented last. `searched` must cover every edge with an endpoint
    /// that changed level.
    pub fn low_outdegree_orient(&mut self, batch: &UpdateBatch, searched: &[Edge], levels: &[usize]) -> OrientUpdate {
        let mut out = OrientUpdate::default();
        for e in &batch.deletions {
            let d = self.direction(e.u, e.v).expect("deleted edge must be stored");
            self.dir.remove(&canonical(e.u, e.v));
            out.deletions.push(d);
        }

        let check = |&(a, b): &Edge| {
            let rev = *self.dir.get(&(a, b))?;
            let want = orient_edge(a, b, levels).0 != a;
            (rev != want).then_some(((a, b), rev))
        };
        let stale: Vec<(Edge, bool)> = if self.parallel && searched.len() >= PAR_CUTOFF {
            searched.par_iter().filter_map(check).collect()
        } else {
            searched.iter().filter_map(check).collect()
        };
        for ((a, b), rev) in stale {
            out.flips.push(if rev { (b, a) } else { (a, b) });
            self.dir.insert((a, b), !rev);
        }

        for e in &batch.insertions {
            let (a, b) = canonical(e.u, e.v);
            let prev = self.dir.insert((a, b), orient_edge(a, b, levels).0 != a);
            assert!(prev.is_none(), "inserted edge ({a}, {b}) already stored");
            out.insertions.push(self.direction(a, b).expect("just stored"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_examples() {
        let levels = [0, 3, 2, 2];
        assert_eq!(orient_edge(0, 1, &levels), (0, 1));
        assert_eq!(orient_edge(1, 0, &levels), (0, 1));
        assert_eq!(orient_edge(3, 2, &levels), (2, 3));
    }

    #[test]
    fn antisymmetric() {
        let levels = [4, 1, 4, 0, 1];
        for u in 0..5 {
            for v in 0..5 {
                if u != v {
                    let (a, b) = orient_edge(u, v, &levels);
                    assert_eq!(orient_edge(v, u, &levels), (a, b));
                    assert!(a == u && b == v || a == v && b == u);
                }
            }
        }
    }
}
