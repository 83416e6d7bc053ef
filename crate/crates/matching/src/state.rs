use std::collections::BTreeSet;

use framework::{Arc, DynamicGraph, ProblemHooks};
use graph_core::{canonical, Edge, FastSet};

use crate::static_maximal_matching;

/// Matching plus the per-vertex sets the update hooks rely on.
#[derive(Clone, Debug, Default)]
pub struct MatchState {
    mate: Vec<Option<usize>>,
    /// `I_v`: unmatched in-neighbors of `v`.
    unmatched_in: Vec<BTreeSet<usize>>,
    /// `X_u`: out-neighbors of `u`, mirroring the orientation.
    out: Vec<FastSet<usize>>,
    parallel: bool,
    last_rounds: usize,
}

impl MatchState {
    pub fn new(n: usize) -> Self {
        let mut s = MatchState::default();
        s.grow(n);
        s
    }

    pub fn set_parallel(&mut self, on: bool) {
        self.parallel = on;
    }

    fn grow(&mut self, n: usize) {
        if n > self.mate.len() {
            self.mate.resize(n, None);
            self.unmatched_in.resize_with(n, BTreeSet::new);
            self.out.resize_with(n, FastSet::default);
        }
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn unmatched_in(&self, v: usize) -> &BTreeSet<usize> {
        &self.unmatched_in[v]
    }

    /// Matched edges as sorted canonical pairs.
    pub fn matching(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> =
            (0..self.mate.len()).filter_map(|u| self.mate[u].filter(|&v| u < v).map(|v| (u, v))).collect();
        out.sort_unstable();
        out
    }

    pub fn size(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    /// Doubling rounds used by the most recent deletion hook.
    pub fn last_doubling_rounds(&self) -> usize {
        self.last_rounds
    }

    /// Every discrepancy between this state and a recomputation from `g`.
    pub fn check(&self, g: &DynamicGraph) -> Vec<String> {
        let mut bad = Vec::new();
        let n = g.num_vertices();
        for u in 0..n {
            if let Some(v) = self.mate[u] {
                if self.mate[v] != Some(u) {
                    bad.push(format!("mate of {u} is {v} but not back"));
                }
                if !g.has_edge(u, v) {
                    bad.push(format!("matched pair ({u}, {v}) is not an edge"));
                }
            }
            let out: BTreeSet<usize> = g.out_neighbors(u).into_iter().collect();
            if out != self.out[u].iter().copied().collect() {
                bad.push(format!("out-neighbor mirror of {u} is stale"));
            }
            let expected: BTreeSet<usize> = g.in_neighbors(u).into_iter().filter(|&w| self.mate[w].is_none()).collect();
            if expected != self.unmatched_in[u] {
                bad.push(format!("I_{u} = {:?}, expected {:?}", self.unmatched_in[u], expected));
            }
            for w in out {
                if self.mate[u].is_none() && self.mate[w].is_none() {
                    bad.push(format!("edge ({u}, {w}) has both endpoints free"));
                }
            }
        }
        bad
    }

    fn is_free(&self, v: usize) -> bool {
        self.mate[v].is_none()
    }

    /// Matches `pairs` and withdraws the new mates from their out-neighbors' `I` sets.
    fn commit(&mut self, pairs: &[Edge]) -> Vec<usize> {
        let mut newly = Vec::with_capacity(2 * pairs.len());
        for &(a, b) in pairs {
            debug_assert!(self.is_free(a) && self.is_free(b));
            self.mate[a] = Some(b);
            self.mate[b] = Some(a);
            newly.extend([a, b]);
        }
        for &x in &newly {
            for &y in &self.out[x] {
                self.unmatched_in[y].remove(&x);
            }
        }
        newly
    }

    /// Edges between free vertices of `verts`, found through out-lists.
    fn free_induced_edges(&self, verts: &FastSet<usize>) -> Vec<Edge> {
        let mut edges = Vec::new();
        for &x in verts {
            if !self.is_free(x) {
                continue;
            }
            for &y in &self.out[x] {
                if self.is_free(y) && verts.contains(&y) {
                    edges.push(canonical(x, y));
                }
            }
        }
        edges
    }
}

impl ProblemHooks for MatchState {
    fn batch_flips(
        &mut self,
        _: &DynamicGraph,
        flips: &[Arc],
        _: &mut Vec<Arc>,
        _: &mut Vec<Arc>,
    ) -> anyhow::Result<()> {
        for &(u, v) in flips {
            self.out[u].remove(&v);
            self.out[v].insert(u);
            if self.is_free(u) {
                self.unmatched_in[v].remove(&u);
            }
            if self.is_free(v) {
                self.unmatched_in[u].insert(v);
            }
        }
        Ok(())
    }

    fn batch_delete(&mut self, _: &DynamicGraph, del: &[Arc]) -> anyhow::Result<()> {
        let mut lost: Vec<usize> = Vec::new();
        for &(u, v) in del {
            self.out[u].remove(&v);
            self.unmatched_in[v].remove(&u);
            if self.mate[u] == Some(v) {
                self.mate[u] = None;
                self.mate[v] = None;
                lost.extend([u, v]);
            }
        }
        lost.sort_unstable();
        self.last_rounds = 0;
        if lost.is_empty() {
            return Ok(());
        }

        // Phase 1: rematch among the freed vertices and their out-neighbors.
        let mut region: FastSet<usize> = lost.iter().copied().collect();
        for &u in &lost {
            region.extend(self.out[u].iter().copied());
        }
        let pairs = static_maximal_matching(&self.free_induced_edges(&region), self.parallel);
        self.commit(&pairs);

        // Phase 2: widen the sample of unmatched in-neighbors geometrically.
        let mut pending: Vec<usize> = lost.iter().copied().filter(|&u| self.is_free(u)).collect();
        let mut c = 1usize;
        let max_in = pending.iter().map(|&u| self.unmatched_in[u].len()).max().unwrap_or(0);
        while !pending.is_empty() {
            pending.retain(|&u| self.is_free(u) && !self.unmatched_in[u].is_empty());
            if pending.is_empty() {
                break;
            }
            self.last_rounds += 1;
            let mut region: FastSet<usize> = pending.iter().copied().collect();
            for &u in &pending {
                region.extend(self.unmatched_in[u].iter().take(c).copied());
            }
            let pairs = static_maximal_matching(&self.free_induced_edges(&region), self.parallel);
            self.commit(&pairs);
            c = c.saturating_mul(2);
            debug_assert!(self.last_rounds <= ceil_log2(max_in.max(1)) + 1);
        }

        // Whoever is still free announces itself to its out-neighbors.
        for &u in &lost {
            if self.is_free(u) {
                for &y in &self.out[u] {
                    self.unmatched_in[y].insert(u);
                }
            }
        }
        Ok(())
    }

    fn batch_insert(&mut self, _: &DynamicGraph, ins: &[Arc]) -> anyhow::Result<()> {
        for &(u, v) in ins {
            self.out[u].insert(v);
            if self.is_free(u) {
                self.unmatched_in[v].insert(u);
            }
        }
        let both_free: Vec<Edge> = ins.iter().filter(|&&(u, v)| self.is_free(u) && self.is_free(v)).copied().collect();
        let pairs = static_maximal_matching(&both_free, self.parallel);
        self.commit(&pairs);
        Ok(())
    }

    fn resize(&mut self, n: usize) {
        self.grow(n);
    }
}

/// `⌈log₂ x⌉` for `x ≥ 1`.
pub(crate) fn ceil_log2(x: usize) -> usize {
    (usize::BITS - (x - 1).leading_zeros()) as usize
}
