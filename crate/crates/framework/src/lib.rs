//! Generic batch-dynamic driver.
//!
//! A [`DynamicGraph`] owns the level structure and the orientation derived
//! from it. [`DynamicGraph::graph_problem_update`] applies a batch to both,
//! then hands the flipped edges and the oriented batch to a
//! [`ProblemHooks`] implementation in the order flips, deletions, insertions.

use graph_core::{Edge, Graph, UpdateBatch};
use orientation::{orient_edge, OrientUpdate, OrientationMap};
use plds::{Plds, PldsError, PldsParams};

/// Directed edge `(tail, head)`.
pub type Arc = (usize, usize);

#[derive(Debug, thiserror::Error)]
pub enum FrameworkError {
    #[error(transparent)]
    Plds(#[from] PldsError),
    #[error("{stage} hook failed: {source:#}")]
    Hook { stage: Stage, source: anyhow::Error },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Flips,
    Delete,
    Insert,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Stage::Flips => "flips",
            Stage::Delete => "delete",
            Stage::Insert => "insert",
        })
    }
}

/// Per-problem reactions to one batch. Every hook sees the structures
/// already updated for the whole batch.
pub trait ProblemHooks {
    /// `flips` are in pre-flip orientation. The hook may extend the oriented
    /// insertion and deletion lists passed on to the later hooks.
    fn batch_flips(
        &mut self,
        g: &DynamicGraph,
        flips: &[Arc],
        ins: &mut Vec<Arc>,
        del: &mut Vec<Arc>,
    ) -> anyhow::Result<()>;

    /// Deletions in pre-batch orientation; the edges are already gone.
    fn batch_delete(&mut self, g: &DynamicGraph, del: &[Arc]) -> anyhow::Result<()>;

    /// Insertions in post-batch orientation; the edges are already present.
    fn batch_insert(&mut self, g: &DynamicGraph, ins: &[Arc]) -> anyhow::Result<()>;

    /// Called when the vertex range grows to `n`.
    fn resize(&mut self, _n: usize) {}
}

/// Hooks that do nothing.
impl ProblemHooks for () {
    fn batch_flips(&mut self, _: &DynamicGraph, _: &[Arc], _: &mut Vec<Arc>, _: &mut Vec<Arc>) -> anyhow::Result<()> {
        Ok(())
    }

    fn batch_delete(&mut self, _: &DynamicGraph, _: &[Arc]) -> anyhow::Result<()> {
        Ok(())
    }

    fn batch_insert(&mut self, _: &DynamicGraph, _: &[Arc]) -> anyhow::Result<()> {
        Ok(())
    }
}

/// What one update did to the shared structures.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UpdateSummary {
    pub moves: usize,
    pub flips: usize,
    pub insertions: usize,
    pub deletions: usize,
    pub rebuilt: bool,
}

/// Level structure plus the orientation it induces.
#[derive(Clone, Debug)]
pub struct DynamicGraph {
    plds: Plds,
    orient: OrientationMap,
}

impl DynamicGraph {
    pub fn new(params: PldsParams, num_vertices: usize) -> Result<Self, PldsError> {
        Ok(Self::from_plds(Plds::new(params, num_vertices)?))
    }

    /// Wraps an existing level structure, orienting its current edges.
    pub fn from_plds(plds: Plds) -> Self {
        let orient = OrientationMap::from_levels(&plds.to_graph(), plds.levels());
        DynamicGraph { plds, orient }
    }

    pub fn set_parallel(&mut self, on: bool) {
        self.plds.set_parallel(on);
        self.orient.set_parallel(on);
    }

    pub fn plds(&self) -> &Plds {
        &self.plds
    }

    pub fn orientation(&self) -> &OrientationMap {
        &self.orient
    }

    pub fn levels(&self) -> &[usize] {
        self.plds.levels()
    }

    pub fn num_vertices(&self) -> usize {
        self.plds.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.plds.num_edges()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.plds.has_edge(u, v)
    }

    /// Current orientation of an edge, if present.
    pub fn direction(&self, u: usize, v: usize) -> Option<Arc> {
        self.orient.direction(u, v)
    }

    /// Heads of `v`'s out-edges, sorted.
    pub fn out_neighbors(&self, v: usize) -> Vec<usize> {
        let levels = self.plds.levels();
        let mut out: Vec<usize> = self.plds.neighbors(v).filter(|&w| orient_edge(v, w, levels).0 == v).collect();
        out.sort_unstable();
        out
    }

    /// Tails of `v`'s in-edges, sorted.
    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        let levels = self.plds.levels();
        let mut out: Vec<usize> = self.plds.neighbors(v).filter(|&w| orient_edge(v, w, levels).0 == w).collect();
        out.sort_unstable();
        out
    }

    /// Current undirected graph.
    pub fn to_graph(&self) -> Graph {
        self.plds.to_graph()
    }

    /// Vertices whose level changed in the last update, sorted and unique.
    pub fn moved_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.plds.last_moves().iter().map(|m| m.vertex).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Applies a unique, valid batch and runs the hooks.
    pub fn graph_problem_update<H: ProblemHooks + ?Sized>(
        &mut self,
        batch: &UpdateBatch,
        hooks: &mut H,
    ) -> Result<UpdateSummary, FrameworkError> {
        self.plds.update(batch)?;
        let searched: Vec<Edge> = self.plds.last_searched().to_vec();
        let out = self.orient.low_outdegree_orient(batch, &searched, self.plds.levels());
        self.dispatch(out, false, hooks)
    }

    /// Deletes and inserts vertices. Edges at deleted vertices go through a
    /// regular update first; a rebuild, if triggered, reaches the hooks as
    /// flips only.
    pub fn vertex_update<H: ProblemHooks + ?Sized>(
        &mut self,
        inserted: &[usize],
        deleted: &[usize],
        hooks: &mut H,
    ) -> Result<UpdateSummary, FrameworkError> {
        for &v in deleted {
            if !self.plds.is_alive(v) {
                return Err(PldsError::UnknownVertex(v).into());
            }
        }
        let mut incident: Vec<Edge> =
            deleted.iter().flat_map(|&v| self.plds.neighbors(v).map(move |w| graph_core::canonical(v, w))).collect();
        incident.sort_unstable();
        incident.dedup();
        let mut summary = self.graph_problem_update(&UpdateBatch::from_edges(&[], &incident), hooks)?;

        let before = self.plds.num_vertices();
        let outcome = self.plds.apply_vertex_updates(inserted, deleted)?;
        if self.plds.num_vertices() > before {
            hooks.resize(self.plds.num_vertices());
        }
        let searched: Vec<Edge> = self.plds.last_searched().to_vec();
        let out = self.orient.low_outdegree_orient(&UpdateBatch::default(), &searched, self.plds.levels());
        let second = self.dispatch(out, outcome.rebuilt, hooks)?;
        summary.moves += second.moves;
        summary.flips += second.flips;
        summary.rebuilt = second.rebuilt;
        Ok(summary)
    }

    fn dispatch<H: ProblemHooks + ?Sized>(
        &mut self,
        out: OrientUpdate,
        rebuilt: bool,
        hooks: &mut H,
    ) -> Result<UpdateSummary, FrameworkError> {
        let OrientUpdate { flips, mut insertions, mut deletions } = out;
        let summary = UpdateSummary {
            moves: self.plds.last_moves().len(),
            flips: flips.len(),
            insertions: insertions.len(),
            deletions: deletions.len(),
            rebuilt,
        };
        let wrap = |stage| move |source| FrameworkError::Hook { stage, source };
        hooks.batch_flips(self, &flips, &mut insertions, &mut deletions).map_err(wrap(Stage::Flips))?;
        hooks.batch_delete(self, &deletions).map_err(wrap(Stage::Delete))?;
        hooks.batch_insert(self, &insertions).map_err(wrap(Stage::Insert))?;
        Ok(summary)
    }
}
