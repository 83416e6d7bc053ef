use framework::{Arc, DynamicGraph, ProblemHooks};
use graph_core::FastSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Disjoint per-level palettes: level `ℓ` owns `⌈2·upper(gn(ℓ))⌉` consecutive color ids.
#[derive(Clone, Debug, PartialEq)]
pub struct Palettes {
    offsets: Vec<usize>,
    sizes: Vec<usize>,
}

impl Palettes {
    pub fn for_graph(g: &DynamicGraph) -> Self {
        let p = g.plds();
        let sizes: Vec<usize> = (0..p.num_levels())
            .map(|l| (2.0 * p.threshold_upper(p.group_of_level(l)) - 1e-9).ceil() as usize)
            .collect();
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut acc = 0;
        for &s in &sizes {
            offsets.push(acc);
            acc += s;
        }
        Palettes { offsets, sizes }
    }

    pub fn size(&self, level: usize) -> usize {
        self.sizes[level]
    }

    /// Color ids of level `level`.
    pub fn range(&self, level: usize) -> std::ops::Range<usize> {
        self.offsets[level]..self.offsets[level] + self.sizes[level]
    }

    pub fn level_of_color(&self, c: usize) -> Option<usize> {
        let l = self.offsets.partition_point(|&o| o <= c).checked_sub(1)?;
        (c < self.offsets[l] + self.sizes[l]).then_some(l)
    }
}

/// Explicit coloring with random redraws from level palettes.
#[derive(Clone, Debug)]
pub struct ExplicitColoring {
    color: Vec<Option<usize>>,
    palettes: Palettes,
    seed: u64,
    batch: u64,
    /// Vertices whose level changed in the current batch and are not yet recolored.
    stale: FastSet<usize>,
    moved: Vec<usize>,
    draws: u64,
}

impl ExplicitColoring {
    /// Colors every vertex of `g` from scratch.
    pub fn new(g: &DynamicGraph, seed: u64) -> anyhow::Result<Self> {
        let n = g.num_vertices();
        let mut c = ExplicitColoring {
            color: vec![None; n],
            palettes: Palettes::for_graph(g),
            seed,
            batch: 0,
            stale: FastSet::default(),
            moved: Vec::new(),
            draws: 0,
        };
        let all: Vec<usize> = (0..n).filter(|&v| g.plds().is_alive(v)).collect();
        c.stale.extend(all.iter().copied());
        c.recolor(g, all)?;
        Ok(c)
    }

    pub fn color(&self, v: usize) -> Option<usize> {
        self.color[v]
    }

    pub fn colors(&self) -> &[Option<usize>] {
        &self.color
    }

    pub fn palettes(&self) -> &Palettes {
        &self.palettes
    }

    /// Vertices whose level changed in the latest batch.
    pub fn level_changed(&self) -> &[usize] {
        &self.moved
    }

    /// Total random draws made so far.
    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn distinct_colors(&self) -> usize {
        self.color.iter().flatten().collect::<FastSet<_>>().len()
    }

    /// Violations of properness and palette membership.
    pub fn check(&self, g: &DynamicGraph) -> Vec<String> {
        let mut bad = Vec::new();
        for v in 0..g.num_vertices() {
            if !g.plds().is_alive(v) {
                continue;
            }
            let Some(c) = self.color[v] else {
                bad.push(format!("{v} uncolored"));
                continue;
            };
            if !self.palettes.range(g.plds().level(v)).contains(&c) {
                bad.push(format!("{v} has color {c} outside the palette of level {}", g.plds().level(v)));
            }
            for w in g.out_neighbors(v) {
                if self.color[w] == Some(c) {
                    bad.push(format!("edge ({v}, {w}) has both ends colored {c}"));
                }
            }
        }
        bad
    }

    /// Redraws `targets` in rounds until none conflicts with a settled neighbor.
    fn recolor(&mut self, g: &DynamicGraph, mut targets: Vec<usize>) -> anyhow::Result<()> {
        targets.sort_unstable();
        targets.dedup();
        let n = g.num_vertices().max(2);
        let limit = 64 * (usize::BITS - (n - 1).leading_zeros()) as usize;
        let mut tries = vec![0usize; targets.len()];
        let mut pending: Vec<usize> = (0..targets.len()).collect();
        let p = g.plds();
        let mut round = 0u64;
        while !pending.is_empty() {
            for &i in &pending {
                let v = targets[i];
                let level = p.level(v);
                let taken: FastSet<usize> = p
                    .up_neighbors(v)
                    .iter()
                    .filter(|w| !self.stale.contains(w))
                    .filter_map(|&w| self.color[w])
                    .collect();
                let free: Vec<usize> = self.palettes.range(level).filter(|c| !taken.contains(c)).collect();
                anyhow::ensure!(!free.is_empty(), "palette of level {level} exhausted at vertex {v}");
                tries[i] += 1;
                anyhow::ensure!(tries[i] <= limit, "vertex {v} needed more than {limit} draws");
                let mut rng = ChaCha8Rng::seed_from_u64(mix(&[self.seed, self.batch, round, v as u64]));
                self.color[v] = Some(free[rng.random_range(0..free.len())]);
                self.draws += 1;
            }
            for &i in &pending {
                self.stale.remove(&targets[i]);
            }
            // A pending vertex keeps its draw unless a neighbor on its palette
            // holds the same color and is settled or has the smaller id.
            let in_round: FastSet<usize> = pending.iter().map(|&i| targets[i]).collect();
            pending.retain(|&i| {
                let v = targets[i];
                p.up_neighbors(v).iter().any(|&w| {
                    !self.stale.contains(&w) && self.color[w] == self.color[v] && (!in_round.contains(&w) || w < v)
                })
            });
            round += 1;
        }
        Ok(())
    }
}

/// SplitMix64 over a tuple, used to derive per-draw seeds.
fn mix(parts: &[u64]) -> u64 {
    let mut h = 0x9e37_79b9_7f4a_7c15u64;
    for &x in parts {
        h ^= x;
        h = h.wrapping_add(0x9e37_79b9_7f4a_7c15);
        h = (h ^ (h >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h = (h ^ (h >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        h ^= h >> 31;
    }
    h
}

impl ProblemHooks for ExplicitColoring {
    fn batch_flips(&mut self, g: &DynamicGraph, _: &[Arc], _: &mut Vec<Arc>, _: &mut Vec<Arc>) -> anyhow::Result<()> {
        self.batch += 1;
        let palettes = Palettes::for_graph(g);
        if palettes != self.palettes {
            // A rebuild changed the layout; every vertex starts over.
            self.palettes = palettes;
            self.stale.extend((0..g.num_vertices()).filter(|&v| g.plds().is_alive(v)));
        }
        self.moved = g.moved_vertices();
        self.stale.extend(self.moved.iter().copied());
        self.stale.extend((0..g.num_vertices()).filter(|&v| self.color[v].is_none() && g.plds().is_alive(v)));
        Ok(())
    }

    fn batch_delete(&mut self, g: &DynamicGraph, del: &[Arc]) -> anyhow::Result<()> {
        let touched: Vec<usize> = del.iter().flat_map(|&(u, v)| [u, v]).filter(|v| self.stale.contains(v)).collect();
        self.recolor(g, touched)
    }

    fn batch_insert(&mut self, g: &DynamicGraph, ins: &[Arc]) -> anyhow::Result<()> {
        let mut targets: Vec<usize> = ins
            .iter()
            .filter(|&&(u, v)| self.color[u].is_some() && self.color[u] == self.color[v])
            .map(|&(u, _)| u)
            .collect();
        // Conflicting tails get a fresh draw against their up-neighbors.
        for &u in &targets {
            self.stale.insert(u);
        }
        targets.extend(self.stale.iter().copied());
        self.recolor(g, targets)
    }

    fn resize(&mut self, n: usize) {
        if n > self.color.len() {
            self.color.resize(n, None);
        }
    }
}
