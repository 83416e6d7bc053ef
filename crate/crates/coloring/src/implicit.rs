use framework::{Arc, DynamicGraph, ProblemHooks};
use graph_core::FastMap;

/// Query-time color: one depth-parity bit per forest holding an out-edge of the vertex.
pub type ImplicitColor = Vec<bool>;

/// Forest decomposition of the oriented edges.
///
/// A vertex's `i`-th out-edge lives in forest `F_i`, where it serves as the
/// vertex's parent link. Because the orientation is acyclic and each vertex
/// has at most one parent per forest, every `F_i` is a forest whose roots
/// are the vertices without an out-edge there.
#[derive(Clone, Debug, Default)]
pub struct ForestColoring {
    /// `slot[v][i]` is the head of `v`'s out-edge in `F_i`.
    slot: Vec<Vec<usize>>,
    locator: FastMap<Arc, usize>,
    sigma: usize,
}

impl ForestColoring {
    /// Starts empty with room for `sigma` forests; more are opened when an out-degree exceeds it.
    pub fn new(n: usize, sigma: usize) -> Self {
        ForestColoring { slot: vec![Vec::new(); n], locator: FastMap::default(), sigma }
    }

    /// Builds the decomposition for the current orientation of `g`.
    pub fn from_graph(g: &DynamicGraph) -> Self {
        let n = g.num_vertices();
        let out: Vec<Vec<usize>> = (0..n).map(|v| g.out_neighbors(v)).collect();
        let sigma = out.iter().map(Vec::len).max().unwrap_or(0);
        let mut f = ForestColoring::new(n, sigma);
        for (u, heads) in out.iter().enumerate() {
            for &v in heads {
                f.insert_arc(u, v);
            }
        }
        f
    }

    /// Number of forests currently allocated.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.slot[v].len()
    }

    /// Forest holding arc `u → v`.
    pub fn forest_of(&self, u: usize, v: usize) -> Option<usize> {
        self.locator.get(&(u, v)).copied()
    }

    /// `A_v`: which forests contain an out-edge of `v`.
    pub fn occupancy(&self, v: usize) -> Vec<bool> {
        (0..self.sigma).map(|i| i < self.slot[v].len()).collect()
    }

    /// Parent of `v` in `F_i`, or `None` if `v` is a root there.
    pub fn parent(&self, v: usize, i: usize) -> Option<usize> {
        self.slot[v].get(i).copied()
    }

    /// Root of `v`'s tree in `F_i` and `v`'s distance to it.
    pub fn root_and_depth(&self, mut v: usize, i: usize) -> (usize, usize) {
        let mut depth = 0;
        while let Some(p) = self.parent(v, i) {
            v = p;
            depth += 1;
        }
        (v, depth)
    }

    /// Places `u → v` in `F_{d(u)}`.
    pub fn insert_arc(&mut self, u: usize, v: usize) {
        let i = self.slot[u].len();
        assert!(self.root_and_depth(v, i).0 != u, "arc ({u}, {v}) would close a cycle in forest {i}");
        assert!(self.locator.insert((u, v), i).is_none(), "arc ({u}, {v}) already stored");
        self.slot[u].push(v);
        self.sigma = self.sigma.max(self.slot[u].len());
    }

    /// Removes `u → v`; `u`'s out-edge from its highest forest takes the freed slot.
    pub fn delete_arc(&mut self, u: usize, v: usize) {
        let i = self.locator.remove(&(u, v)).unwrap_or_else(|| panic!("arc ({u}, {v}) not stored"));
        self.slot[u].swap_remove(i);
        if let Some(&moved) = self.slot[u].get(i) {
            self.locator.insert((u, moved), i);
        }
    }

    pub fn query(&self, v: usize) -> ImplicitColor {
        (0..self.slot[v].len()).map(|i| self.root_and_depth(v, i).1 % 2 == 1).collect()
    }

    pub fn query_all(&self, q: &[usize]) -> Vec<ImplicitColor> {
        q.iter().map(|&v| self.query(v)).collect()
    }

    /// Violations of the forest invariants, checked against `g`'s orientation.
    pub fn check(&self, g: &DynamicGraph) -> Vec<String> {
        let mut bad = Vec::new();
        let n = g.num_vertices();
        let mut arcs = 0;
        for u in 0..n {
            let mut heads = self.slot[u].clone();
            heads.sort_unstable();
            if heads != g.out_neighbors(u) {
                bad.push(format!("forest out-edges of {u} differ from the orientation"));
            }
            for (i, &v) in self.slot[u].iter().enumerate() {
                arcs += 1;
                if self.locator.get(&(u, v)) != Some(&i) {
                    bad.push(format!("locator for ({u}, {v}) is not {i}"));
                }
            }
            if self.slot[u].len() > self.sigma {
                bad.push(format!("{u} uses more than sigma forests"));
            }
        }
        if arcs != self.locator.len() || arcs != g.num_edges() {
            bad.push(format!("{arcs} forest edges, {} located, {} in graph", self.locator.len(), g.num_edges()));
        }
        // Each forest: union-find over its edges must never join a component to itself.
        for i in 0..self.sigma {
            let mut uf: Vec<usize> = (0..n).collect();
            fn find(uf: &mut [usize], mut x: usize) -> usize {
                while uf[x] != x {
                    uf[x] = uf[uf[x]];
                    x = uf[x];
                }
                x
            }
            for u in 0..n {
                if let Some(v) = self.parent(u, i) {
                    let (a, b) = (find(&mut uf, u), find(&mut uf, v));
                    if a == b {
                        bad.push(format!("forest {i} has a cycle through ({u}, {v})"));
                    } else {
                        uf[a] = b;
                    }
                }
            }
            // One parentless vertex per component.
            let mut roots: FastMap<usize, usize> = FastMap::default();
            for v in 0..n {
                if self.parent(v, i).is_none() {
                    *roots.entry(find(&mut uf, v)).or_default() += 1;
                }
            }
            if roots.values().any(|&r| r != 1) || roots.len() != (0..n).filter(|&v| find(&mut uf, v) == v).count() {
                bad.push(format!("forest {i} has a tree without a unique root"));
            }
        }
        bad
    }
}

impl ProblemHooks for ForestColoring {
    fn batch_flips(
        &mut self,
        _: &DynamicGraph,
        flips: &[Arc],
        ins: &mut Vec<Arc>,
        del: &mut Vec<Arc>,
    ) -> anyhow::Result<()> {
        // Old directions leave with the deletions; new ones arrive with the insertions.
        for &(u, v) in flips {
            del.push((u, v));
            ins.push((v, u));
        }
        Ok(())
    }

    fn batch_delete(&mut self, _: &DynamicGraph, del: &[Arc]) -> anyhow::Result<()> {
        for &(u, v) in del {
            anyhow::ensure!(self.locator.contains_key(&(u, v)), "arc ({u}, {v}) not in any forest");
            self.delete_arc(u, v);
        }
        Ok(())
    }

    fn batch_insert(&mut self, _: &DynamicGraph, ins: &[Arc]) -> anyhow::Result<()> {
        for &(u, v) in ins {
            self.insert_arc(u, v);
        }
        Ok(())
    }

    fn resize(&mut self, n: usize) {
        if n > self.slot.len() {
            self.slot.resize(n, Vec::new());
        }
    }
}
