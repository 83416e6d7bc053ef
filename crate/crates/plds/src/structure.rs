use std::collections::BTreeMap;
use std::io::{self, Write};

use graph_core::{canonical, Edge, FastSet, Graph, UpdateBatch};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::{Geometry, InvariantReport, PldsError, PldsParams, Violation};

/// Below this many candidates the parallel paths are not worth the overhead.
const PAR_CUTOFF: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Insert,
    Delete,
    Rebuild,
}

/// One level change, in the order it was applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub vertex: usize,
    pub from: usize,
    pub to: usize,
    pub phase: Phase,
}

/// Processing order for the vertices that move together at one level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MoveOrder {
    #[default]
    ById,
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug)]
enum Layout {
    Derived(PldsParams),
    Fixed,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexUpdateOutcome {
    pub removed_edges: Vec<Edge>,
    pub rebuilt: bool,
}

/// The level structure. Every vertex sits on a level in `[0, K)`; `up[v]`
/// holds neighbors on levels `≥ ℓ(v)` and `down[v][j]` those on level `j < ℓ(v)`.
#[derive(Clone, Debug)]
pub struct Plds {
    delta: f64,
    lambda: f64,
    layout: Layout,
    geometry: Geometry,
    upper: Vec<f64>,
    lower: Vec<f64>,
    level: Vec<usize>,
    up: Vec<FastSet<usize>>,
    down: Vec<BTreeMap<usize, FastSet<usize>>>,
    degree: Vec<usize>,
    alive: Vec<bool>,
    num_edges: usize,
    parallel: bool,
    order: MoveOrder,
    order_round: u64,
    moves: Vec<Move>,
    searched: FastSet<Edge>,
    searched_sorted: Vec<Edge>,
    vertex_updates: usize,
    rebuilds: usize,
}

impl Plds {
    /// Empty structure on `num_vertices` vertices with a parameter-derived layout.
    pub fn new(params: PldsParams, num_vertices: usize) -> Result<Self, PldsError> {
        params.validate()?;
        Ok(Self::build(params.delta, params.lambda, Layout::Derived(params), params.geometry(), num_vertices))
    }

    /// Empty structure with an explicit level layout.
    pub fn with_geometry(delta: f64, lambda: f64, geometry: Geometry, num_vertices: usize) -> Result<Self, PldsError> {
        PldsParams::new(delta, lambda, 1, num_vertices).validate()?;
        Ok(Self::build(delta, lambda, Layout::Fixed, geometry, num_vertices))
    }

    /// Structure with hand-assigned levels. Fails if the assignment breaks
    /// either degree invariant.
    pub fn from_levels(
        delta: f64,
        lambda: f64,
        geometry: Geometry,
        levels: &[usize],
        edges: &[Edge],
    ) -> Result<Self, PldsError> {
        let mut p = Self::with_geometry(delta, lambda, geometry, levels.len())?;
        for (v, &l) in levels.iter().enumerate() {
            if l >= geometry.num_levels() {
                return Err(PldsError::InvalidParams(format!("level {l} of vertex {v} is out of range")));
            }
            p.level[v] = l;
        }
        for &(u, v) in edges {
            if u == v || u >= levels.len() || v >= levels.len() || p.has_edge(u, v) {
                return Err(PldsError::InvalidBatch(format!("bad edge ({u}, {v})")));
            }
            p.link(u, v);
        }
        let report = p.check_invariants();
        if report.is_empty() {
            Ok(p)
        } else {
            Err(PldsError::InvalidLevels(report))
        }
    }

    fn build(delta: f64, lambda: f64, layout: Layout, geometry: Geometry, n: usize) -> Self {
        let (upper, lower) = thresholds(delta, lambda, geometry.num_groups());
        Plds {
            delta,
            lambda,
            layout,
            geometry,
            upper,
            lower,
            level: vec![0; n],
            up: vec![FastSet::default(); n],
            down: vec![BTreeMap::new(); n],
            degree: vec![0; n],
            alive: vec![true; n],
            num_edges: 0,
            parallel: false,
            order: MoveOrder::ById,
            order_round: 0,
            moves: Vec::new(),
            searched: FastSet::default(),
            searched_sorted: Vec::new(),
            vertex_updates: 0,
            rebuilds: 0,
        }
    }

    /// Enables rayon for violator filtering and desire-level computation.
    /// Structural mutations stay sequential either way.
    pub fn set_parallel(&mut self, on: bool) {
        self.parallel = on;
    }

    pub fn set_move_order(&mut self, order: MoveOrder) {
        self.order = order;
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn num_levels(&self) -> usize {
        self.geometry.num_levels()
    }

    pub fn num_vertices(&self) -> usize {
        self.level.len()
    }

    pub fn num_edges(&self) -> usize {
        self.num_edges
    }

    pub fn rebuilds(&self) -> usize {
        self.rebuilds
    }

    pub fn is_alive(&self, v: usize) -> bool {
        self.alive.get(v).copied().unwrap_or(false)
    }

    pub fn level(&self, v: usize) -> usize {
        self.level[v]
    }

    pub fn levels(&self) -> &[usize] {
        &self.level
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    pub fn group_of_level(&self, level: usize) -> usize {
        self.geometry.group_of_level(level)
    }

    /// `(2 + 3/λ)(1 + δ)^i`
    pub fn threshold_upper(&self, group: usize) -> f64 {
        self.upper[group]
    }

    /// `(1 + δ)^i`
    pub fn threshold_lower(&self, group: usize) -> f64 {
        self.lower[group]
    }

    pub fn up_degree(&self, v: usize) -> usize {
        self.up[v].len()
    }

    pub fn upstar_degree(&self, v: usize) -> usize {
        let l = self.level[v];
        let below = if l == 0 { 0 } else { self.down[v].get(&(l - 1)).map_or(0, |s| s.len()) };
        self.up[v].len() + below
    }

    pub fn up_neighbors(&self, v: usize) -> &FastSet<usize> {
        &self.up[v]
    }

    /// Neighbors on level `j < ℓ(v)`.
    pub fn down_neighbors(&self, v: usize, j: usize) -> Option<&FastSet<usize>> {
        self.down[v].get(&j)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[v].iter().chain(self.down[v].values().flatten()).copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.level.len() || v >= self.level.len() {
            return false;
        }
        let lv = self.level[v];
        if lv >= self.level[u] {
            self.up[u].contains(&v)
        } else {
            self.down[u].get(&lv).is_some_and(|s| s.contains(&v))
        }
    }

    /// Moves applied by the last update, in order.
    pub fn last_moves(&self) -> &[Move] {
        &self.moves
    }

    /// Edges whose endpoint changed level during the last update, in `(min, max)` form, sorted.
    pub fn last_searched(&self) -> &[Edge] {
        &self.searched_sorted
    }

    /// `0` for isolated vertices, otherwise `(1+δ)^{max(⌊(ℓ+1)/g⌋ − 1, 0)}` with `g` the group size.
    pub fn coreness_estimate(&self, v: usize) -> f64 {
        if self.degree[v] == 0 {
            return 0.0;
        }
        let exp = ((self.level[v] + 1) / self.geometry.group_size()).saturating_sub(1);
        (1.0 + self.delta).powi(exp as i32)
    }

    pub fn coreness_estimates(&self) -> Vec<f64> {
        (0..self.level.len()).map(|v| self.coreness_estimate(v)).collect()
    }

    /// Writes `id,level,estimate` rows for live vertices.
    pub fn write_snapshot<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "id,level,estimate")?;
        for v in 0..self.level.len() {
            if self.alive[v] {
                writeln!(out, "{v},{},{}", self.level[v], self.coreness_estimate(v))?;
            }
        }
        Ok(())
    }

    /// Undirected copy of the current edge set.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::new(self.level.len());
        for v in 0..self.level.len() {
            for &w in &self.up[v] {
                g.insert_edge(v, w);
            }
        }
        g
    }

    fn violates_upper(&self, v: usize) -> bool {
        let l = self.level[v];
        l + 1 < self.num_levels() && self.up[v].len() as f64 > self.upper[self.geometry.group_of_level(l)]
    }

    fn violates_lower(&self, v: usize) -> bool {
        let l = self.level[v];
        l > 0 && (self.upstar_degree(v) as f64) < self.lower[self.geometry.group_of_level(l - 1)]
    }

    // --- structural primitives ---

    fn attach(&mut self, a: usize, b: usize) {
        let (la, lb) = (self.level[a], self.level[b]);
        if lb >= la {
            self.up[a].insert(b);
        } else {
            self.down[a].entry(lb).or_default().insert(b);
        }
    }

    fn detach(&mut self, a: usize, b: usize, la: usize, lb: usize) {
        if lb >= la {
            self.up[a].remove(&b);
        } else if let Some(set) = self.down[a].get_mut(&lb) {
            set.remove(&b);
            if set.is_empty() {
                self.down[a].remove(&lb);
            }
        }
    }

    /// Adds `{u, v}` to the neighbor structures without rebalancing.
    pub fn link(&mut self, u: usize, v: usize) {
        self.attach(u, v);
        self.attach(v, u);
        self.degree[u] += 1;
        self.degree[v] += 1;
        self.num_edges += 1;
    }

    /// Removes `{u, v}` from the neighbor structures without rebalancing.
    pub fn unlink(&mut self, u: usize, v: usize) {
        let (lu, lv) = (self.level[u], self.level[v]);
        self.detach(u, v, lu, lv);
        self.detach(v, u, lv, lu);
        self.degree[u] -= 1;
        self.degree[v] -= 1;
        self.num_edges -= 1;
    }

    /// Relocates `v` to level `to`, touching only neighbors whose relation to `v` can change.
    fn move_vertex(&mut self, v: usize, to: usize, phase: Phase) {
        let from = self.level[v];
        if from == to {
            return;
        }
        let mut affected: Vec<usize> = self.up[v].iter().copied().collect();
        if to < from {
            affected.extend(self.down[v].range(to..from).flat_map(|(_, s)| s.iter().copied()));
        }
        for &w in &affected {
            let lw = self.level[w];
            self.detach(w, v, lw, from);
            self.detach(v, w, from, lw);
        }
        self.level[v] = to;
        for &w in &affected {
            self.attach(w, v);
            self.attach(v, w);
            self.searched.insert(canonical(v, w));
        }
        self.moves.push(Move { vertex: v, from, to, phase });
    }

    fn order_movers(&mut self, movers: &mut [usize]) {
        movers.sort_unstable();
        if let MoveOrder::Shuffled(seed) = self.order {
            self.order_round += 1;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ self.order_round.wrapping_mul(0x9e37_79b9_7f4a_7c15));
            movers.shuffle(&mut rng);
        }
    }

    fn filter_vertices(&self, cands: Vec<usize>, pred: impl Fn(&Self, usize) -> bool + Sync) -> Vec<usize> {
        if self.parallel && cands.len() >= PAR_CUTOFF {
            cands.into_par_iter().filter(|&v| pred(self, v)).collect()
        } else {
            cands.into_iter().filter(|&v| pred(self, v)).collect()
        }
    }

    // --- batch update ---

    fn validate_batch(&self, batch: &UpdateBatch) -> Result<(), PldsError> {
        let mut seen = FastSet::default();
        let n = self.level.len();
        for (e, insert) in batch.insertions.iter().map(|e| (e, true)).chain(batch.deletions.iter().map(|e| (e, false)))
        {
            let bad = |why: &str| Err(PldsError::InvalidBatch(format!("({}, {}): {why}", e.u, e.v)));
            if e.u == e.v {
                return bad("self-loop");
            }
            if e.u >= n || e.v >= n || !self.alive[e.u] || !self.alive[e.v] {
                return bad("unknown endpoint");
            }
            if !seen.insert(canonical(e.u, e.v)) {
                return bad("duplicate update");
            }
            if insert == self.has_edge(e.u, e.v) {
                return bad(if insert { "edge already present" } else { "edge absent" });
            }
        }
        Ok(())
    }

    fn begin_batch(&mut self) {
        self.moves.clear();
        self.searched.clear();
    }

    fn end_batch(&mut self) {
        self.searched_sorted = self.searched.drain().collect();
        self.searched_sorted.sort_unstable();
    }

    /// Applies a unique, valid batch: insertions, then deletions, each followed by its rebalance pass.
    pub fn update(&mut self, batch: &UpdateBatch) -> Result<(), PldsError> {
        self.validate_batch(batch)?;
        self.begin_batch();
        for e in &batch.insertions {
            self.link(e.u, e.v);
        }
        let seeds: Vec<usize> = batch.insertions.iter().flat_map(|e| [e.u, e.v]).collect();
        self.rebalance_insertions(&seeds);
        for e in &batch.deletions {
            self.unlink(e.u, e.v);
        }
        let seeds: Vec<usize> = batch.deletions.iter().flat_map(|e| [e.u, e.v]).collect();
        self.rebalance_deletions(&seeds);
        self.end_batch();
        Ok(())
    }

    /// Level-by-level upward pass. `seeds` are endpoints of edges already linked.
    pub fn rebalance_insertions(&mut self, seeds: &[usize]) {
        let top = self.num_levels() - 1;
        let mut pending: BTreeMap<usize, FastSet<usize>> = BTreeMap::new();
        for &v in seeds {
            pending.entry(self.level[v]).or_default().insert(v);
        }
        while let Some((l, marked)) = pending.pop_first() {
            if l >= top {
                continue;
            }
            let mut movers = self.filter_vertices(marked.into_iter().collect(), |s, v| s.violates_upper(v));
            if movers.is_empty() {
                continue;
            }
            self.order_movers(&mut movers);
            for &v in &movers {
                self.move_vertex(v, l + 1, Phase::Insert);
            }
            let next = l + 1;
            if next >= top {
                continue;
            }
            let mut marks: Vec<usize> = Vec::new();
            for &v in &movers {
                marks.push(v);
                marks.extend(self.up[v].iter().copied().filter(|&w| self.level[w] == next));
            }
            marks.sort_unstable();
            marks.dedup();
            let marks = self.filter_vertices(marks, |s, w| s.violates_upper(w));
            if !marks.is_empty() {
                pending.entry(next).or_default().extend(marks);
            }
        }
    }

    /// Downward pass. `seeds` are endpoints of edges already unlinked.
    pub fn rebalance_deletions(&mut self, seeds: &[usize]) {
        let mut desire: graph_core::FastMap<usize, usize> = graph_core::FastMap::default();
        let mut buckets: BTreeMap<usize, FastSet<usize>> = BTreeMap::new();

        let mut cands = seeds.to_vec();
        cands.sort_unstable();
        cands.dedup();
        let violators = self.filter_vertices(cands, |s, v| s.violates_lower(v));
        for (v, d) in self.desire_levels(&violators) {
            desire.insert(v, d);
            buckets.entry(d).or_default().insert(v);
        }

        while let Some((l, set)) = buckets.pop_first() {
            let mut movers: Vec<usize> = set.into_iter().collect();
            self.order_movers(&mut movers);
            for &v in &movers {
                desire.remove(&v);
                self.move_vertex(v, l, Phase::Delete);
            }
            let mut touched: Vec<usize> = Vec::new();
            for &v in &movers {
                touched.extend(self.up[v].iter().copied().filter(|&w| self.level[w] > l));
            }
            touched.sort_unstable();
            touched.dedup();
            let violators = self.filter_vertices(touched, |s, w| s.violates_lower(w));
            for (w, d) in self.desire_levels(&violators) {
                debug_assert!(d > l, "desire level {d} of {w} not above processed level {l}");
                if let Some(old) = desire.insert(w, d) {
                    if old != d {
                        if let Some(b) = buckets.get_mut(&old) {
                            b.remove(&w);
                            if b.is_empty() {
                                buckets.remove(&old);
                            }
                        }
                    }
                }
                buckets.entry(d).or_default().insert(w);
            }
        }
    }

    fn desire_levels(&self, vs: &[usize]) -> Vec<(usize, usize)> {
        let dl = |&v: &usize| (v, self.desire_level_unchecked(v));
        if self.parallel && vs.len() >= PAR_CUTOFF {
            vs.par_iter().map(dl).collect()
        } else {
            vs.iter().map(dl).collect()
        }
    }

    /// Number of neighbors on levels `≥ j`.
    fn count_at_or_above(&self, v: usize, j: usize) -> usize {
        self.up[v].len() + self.down[v].range(j..).map(|(_, s)| s.len()).sum::<usize>()
    }

    /// Whether `v` would satisfy the lower-bound invariant on level `l`.
    fn lower_holds_at(&self, v: usize, l: usize) -> bool {
        l == 0 || self.count_at_or_above(v, l - 1) as f64 >= self.lower[self.geometry.group_of_level(l - 1)]
    }

    /// Highest level below `ℓ(v)` where the lower-bound invariant holds,
    /// found by doubling the window and then binary searching inside it.
    pub fn calculate_desire_level(&self, v: usize) -> Result<usize, PldsError> {
        if v >= self.level.len() {
            return Err(PldsError::UnknownVertex(v));
        }
        if !self.violates_lower(v) {
            return Err(PldsError::NotViolating(v));
        }
        Ok(self.desire_level_unchecked(v))
    }

    fn desire_level_unchecked(&self, v: usize) -> usize {
        let cur = self.level[v];
        // Holds at `lo`, fails at `hi`; the answer lies in [lo, hi).
        let mut hi = cur;
        let mut step = 1;
        let lo = loop {
            let probe = cur.saturating_sub(step);
            if self.lower_holds_at(v, probe) {
                break probe;
            }
            hi = probe;
            step *= 2;
        };
        let (mut lo, mut hi) = (lo, hi);
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.lower_holds_at(v, mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    // --- checking ---

    /// Every degree-invariant and partition-consistency violation.
    pub fn check_invariants(&self) -> InvariantReport {
        let mut report = InvariantReport::default();
        let top = self.num_levels() - 1;
        for v in 0..self.level.len() {
            let l = self.level[v];
            if l > top {
                report.push(Violation::LevelOutOfRange { vertex: v, level: l });
                continue;
            }
            let mut deg = 0;
            for &w in &self.up[v] {
                deg += 1;
                if w >= self.level.len() || self.level[w] < l {
                    report.push(Violation::Partition { vertex: v, neighbor: w, detail: "up-neighbor below own level" });
                } else if !self.holds(w, v) {
                    report.push(Violation::Partition { vertex: v, neighbor: w, detail: "edge not mirrored" });
                }
            }
            for (&j, set) in &self.down[v] {
                if set.is_empty() {
                    report.push(Violation::Partition { vertex: v, neighbor: v, detail: "empty down-level kept" });
                }
                for &w in set {
                    deg += 1;
                    if j >= l || w >= self.level.len() || self.level[w] != j {
                        report.push(Violation::Partition {
                            vertex: v,
                            neighbor: w,
                            detail: "down-neighbor on wrong level",
                        });
                    } else if !self.holds(w, v) {
                        report.push(Violation::Partition { vertex: v, neighbor: w, detail: "edge not mirrored" });
                    }
                }
            }
            if deg != self.degree[v] {
                report.push(Violation::Partition { vertex: v, neighbor: v, detail: "degree counter out of sync" });
            }
            if !self.alive[v] && deg > 0 {
                report.push(Violation::Partition { vertex: v, neighbor: v, detail: "removed vertex has edges" });
            }
            let group = self.group_of_level(l);
            if l < top && self.up[v].len() as f64 > self.upper[group] {
                report.push(Violation::UpperBound {
                    vertex: v,
                    level: l,
                    up_degree: self.up[v].len(),
                    bound: self.upper[group],
                });
            }
            if l > 0 {
                let bound = self.lower[self.group_of_level(l - 1)];
                if (self.upstar_degree(v) as f64) < bound {
                    report.push(Violation::LowerBound {
                        vertex: v,
                        level: l,
                        upstar_degree: self.upstar_degree(v),
                        bound,
                    });
                }
            }
        }
        report
    }

    /// Whether `a`'s structures record `b` where the levels say they should.
    fn holds(&self, a: usize, b: usize) -> bool {
        let (la, lb) = (self.level[a], self.level[b]);
        if lb >= la {
            self.up[a].contains(&b)
        } else {
            self.down[a].get(&lb).is_some_and(|s| s.contains(&b))
        }
    }

    /// Overwrites a level without touching neighbor structures. Only useful
    /// for fault-injection tests of [`Plds::check_invariants`].
    #[doc(hidden)]
    pub fn force_level(&mut self, v: usize, level: usize) {
        self.level[v] = level;
    }

    // --- vertex updates ---

    /// Inserts isolated vertices and removes vertices along with their edges.
    ///
    /// Inserted ids must be unused; ids past the current range extend it.
    /// Once more than half the capacity worth of vertex updates accumulates,
    /// the structure is rebuilt from scratch for the new vertex count.
    pub fn apply_vertex_updates(
        &mut self,
        inserted: &[usize],
        deleted: &[usize],
    ) -> Result<VertexUpdateOutcome, PldsError> {
        for &v in deleted {
            if !self.is_alive(v) {
                return Err(PldsError::UnknownVertex(v));
            }
        }
        let mut fresh = FastSet::default();
        for &v in inserted {
            if self.is_alive(v) || !fresh.insert(v) {
                return Err(PldsError::VertexExists(v));
            }
        }

        let mut removed: Vec<Edge> = Vec::new();
        let mut seen = FastSet::default();
        for &v in deleted {
            for w in self.neighbors(v) {
                let e = canonical(v, w);
                if seen.insert(e) {
                    removed.push(e);
                }
            }
        }
        removed.sort_unstable();
        self.update(&UpdateBatch::from_edges(&[], &removed))?;
        for &v in deleted {
            self.alive[v] = false;
            self.level[v] = 0;
        }

        for &v in inserted {
            if v >= self.level.len() {
                let n = v + 1;
                self.level.resize(n, 0);
                self.up.resize_with(n, FastSet::default);
                self.down.resize_with(n, BTreeMap::new);
                self.degree.resize(n, 0);
                self.alive.resize(n, false);
            }
            self.alive[v] = true;
            self.level[v] = 0;
        }

        self.vertex_updates += inserted.len() + deleted.len();
        let capacity = match self.layout {
            Layout::Derived(p) => p.capacity_n,
            Layout::Fixed => self.level.len(),
        };
        let rebuilt = 2 * self.vertex_updates > capacity;
        if rebuilt {
            self.rebuild();
        }
        Ok(VertexUpdateOutcome { removed_edges: removed, rebuilt })
    }

    /// Recomputes the layout for the live vertex count and re-inserts every edge.
    /// The move log afterwards lists every vertex whose level changed.
    pub fn rebuild(&mut self) {
        let live = self.alive.iter().filter(|&&a| a).count().max(1);
        if let Layout::Derived(mut p) = self.layout {
            p.capacity_n = live;
            self.layout = Layout::Derived(p);
            self.geometry = p.geometry();
            let (upper, lower) = thresholds(self.delta, self.lambda, self.geometry.num_groups());
            self.upper = upper;
            self.lower = lower;
        }
        let old_levels = std::mem::take(&mut self.level);
        let edges = self.to_graph().edges();
        let n = old_levels.len();
        self.level = vec![0; n];
        self.up = vec![FastSet::default(); n];
        self.down = vec![BTreeMap::new(); n];
        self.degree = vec![0; n];
        self.num_edges = 0;
        self.begin_batch();
        for &(u, v) in &edges {
            self.link(u, v);
        }
        let all: Vec<usize> = (0..n).filter(|&v| self.alive[v]).collect();
        self.rebalance_insertions(&all);
        self.moves.clear();
        for (v, &old) in old_levels.iter().enumerate() {
            if old != self.level[v] {
                self.moves.push(Move { vertex: v, from: old, to: self.level[v], phase: Phase::Rebuild });
            }
        }
        self.searched = edges.into_iter().collect();
        self.end_batch();
        self.vertex_updates = 0;
        self.rebuilds += 1;
    }
}

fn thresholds(delta: f64, lambda: f64, groups: usize) -> (Vec<f64>, Vec<f64>) {
    let lower: Vec<f64> = (0..groups).map(|i| (1.0 + delta).powi(i as i32)).collect();
    let upper = lower.iter().map(|&x| (2.0 + 3.0 / lambda) * x).collect();
    (upper, lower)
}
