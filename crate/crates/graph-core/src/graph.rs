use crate::{FastSet, UpdateBatch};

/// An undirected edge as an ordered pair. Use [`canonical`] for keys.
pub type Edge = (usize, usize);

/// `(min, max)` form of an undirected edge.
#[inline]
pub fn canonical(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph over dense vertex ids.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    adj: Vec<FastSet<usize>>,
    num_edges: usize,
}

impl Graph {
    pub fn new(num_vertices: usize) -> Self {
        Graph { adj: vec![FastSet::default(); num_vertices], num_edges: 0 }
    }

    /// Builds a graph from an edge list, ignoring self-loops and duplicates.
    pub fn from_edges(num_vertices: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut g = Graph::new(num_vertices);
        for (u, v) in edges {
            g.insert_edge(u, v);
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &FastSet<usize> {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].contains(&v)
    }

    /// Appends a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(FastSet::default());
        self.adj.len() - 1
    }

    /// Grows the vertex range to at least `n`.
    pub fn ensure_vertices(&mut self, n: usize) {
        if n > self.adj.len() {
            self.adj.resize_with(n, FastSet::default);
        }
    }

    /// Returns false for self-loops, out-of-range ids and existing edges.
    pub fn insert_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v || u >= self.adj.len() || v >= self.adj.len() {
            return false;
        }
        if !self.adj[u].insert(v) {
            return false;
        }
        self.adj[v].insert(u);
        self.num_edges += 1;
        true
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.adj.len() || v >= self.adj.len() || !self.adj[u].remove(&v) {
            return false;
        }
        self.adj[v].remove(&u);
        self.num_edges -= 1;
        true
    }

    /// Applies a preprocessed batch. Returns the number of updates that
    /// did not match the current edge set (zero for a valid batch).
    pub fn apply_batch(&mut self, batch: &UpdateBatch) -> usize {
        let mut rejected = 0;
        for d in &batch.deletions {
            if !self.remove_edge(d.u, d.v) {
                rejected += 1;
            }
        }
        for i in &batch.insertions {
            if !self.insert_edge(i.u, i.v) {
                rejected += 1;
            }
        }
        rejected
    }

    /// All edges in `(min, max)` form, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.num_edges);
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out.sort_unstable();
        out
    }

    /// Sorted neighbor list, handy for deterministic iteration.
    pub fn sorted_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.adj[v].iter().copied().collect();
        out.sort_unstable();
        out
    }

    /// Checks symmetry, self-loops and the cached edge count.
    pub fn is_consistent(&self) -> bool {
        let mut twice = 0;
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if v == u || v >= self.adj.len() || !self.adj[v].contains(&u) {
                    return false;
                }
                twice += 1;
            }
        }
        twice == 2 * self.num_edges
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj.len() == other.adj.len() && self.num_edges == other.num_edges && self.adj == other.adj
    }
}

impl Eq for Graph {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_is_symmetric_and_rejects_loops() {
        let mut g = Graph::new(3);
        assert!(g.insert_edge(0, 1));
        assert!(!g.insert_edge(1, 0));
        assert!(!g.insert_edge(2, 2));
        assert!(!g.insert_edge(0, 7));
        assert!(g.has_edge(1, 0));
        assert_eq!(g.num_edges(), 1);
        assert!(g.is_consistent());
    }

    #[test]
    fn remove_updates_count() {
        let mut g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]);
        assert!(g.remove_edge(2, 1));
        assert!(!g.remove_edge(2, 1));
        assert_eq!(g.edges(), vec![(0, 1), (2, 3)]);
        assert_eq!(g.max_degree(), 1);
    }
}
