use std::collections::hash_map::Entry;
use std::collections::BTreeSet;

use framework::{Arc, DynamicGraph, ProblemHooks};
use graph_core::{FastMap, FastSet};
use rayon::prelude::*;

const PAR_CUTOFF: usize = 64;

type Table = FastMap<Vec<usize>, i64>;
/// Change to the total and the table updates from one marked edge.
type Contribution = (i64, Vec<(Vec<usize>, i64)>);

/// k-clique counter with one table per incomplete-set size.
#[derive(Clone, Debug)]
pub struct CliqueCounter {
    k: usize,
    /// `tables[i]` holds keys of size `i`; indices below 2 stay empty.
    tables: Vec<Table>,
    total: i64,
    /// Own copy of the orientation, advanced stage by stage.
    out: Vec<BTreeSet<usize>>,
    parallel: bool,
}

/// The unique member of `set` with an out-edge to every other member.
pub fn source_of(set: &[usize], arc: impl Fn(usize, usize) -> bool) -> Option<usize> {
    set.iter().copied().find(|&s| set.iter().all(|&w| w == s || arc(s, w)))
}

impl CliqueCounter {
    /// # Panics
    /// If `k < 3`.
    pub fn new(k: usize, n: usize) -> Self {
        assert!(k >= 3, "clique size must be at least 3");
        CliqueCounter { k, tables: vec![Table::default(); k], total: 0, out: vec![BTreeSet::new(); n], parallel: false }
    }

    pub fn set_parallel(&mut self, on: bool) {
        self.parallel = on;
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Current number of k-cliques.
    pub fn total(&self) -> u64 {
        u64::try_from(self.total).expect("negative clique total")
    }

    /// Stored counts for keys of size `size` (`2 ≤ size < k`).
    pub fn table(&self, size: usize) -> &FastMap<Vec<usize>, i64> {
        assert!((2..self.k).contains(&size), "no table for size {size}");
        &self.tables[size]
    }

    /// Current out-neighbors of `v` in the counter's copy of the orientation.
    pub fn out_neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.out[v]
    }

    fn arc(&self, a: usize, b: usize) -> bool {
        self.out[a].contains(&b)
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.arc(a, b) || self.arc(b, a)
    }

    fn value(&self, key: &[usize]) -> i64 {
        if key.len() == self.k {
            1
        } else {
            self.tables[key.len()].get(key).copied().unwrap_or(0)
        }
    }

    /// Runs one stage over `edges` (already present in `out`), which are the marked edges in R order.
    ///
    /// Sets `T′` are visited by size, ascending for insertions and descending
    /// for deletions, so each read sees the table as it stands on the other
    /// side of the stage. `sign` is +1 or −1.
    fn stage(&mut self, edges: &[Arc], sign: i64) {
        let mut rank: FastMap<Arc, usize> = FastMap::default();
        for (r, &e) in edges.iter().enumerate() {
            rank.insert(e, r);
        }
        let sizes: Vec<usize> = if sign > 0 { (2..=self.k).collect() } else { (2..=self.k).rev().collect() };
        for size in sizes {
            let run = |&(u, v): &Arc| self.contributions(u, v, size, &rank);
            let parts: Vec<Contribution> = if self.parallel && edges.len() >= PAR_CUTOFF {
                edges.par_iter().map(run).collect()
            } else {
                edges.iter().map(run).collect()
            };
            for (dt, updates) in parts {
                self.total += sign * dt;
                for (key, w) in updates {
                    match self.tables[key.len()].entry(key) {
                        Entry::Occupied(mut slot) => {
                            *slot.get_mut() += sign * w;
                            if *slot.get() == 0 {
                                slot.remove();
                            }
                        }
                        Entry::Vacant(slot) => {
                            slot.insert(sign * w);
                        }
                    }
                }
            }
        }
    }

    /// Clique-total and table contributions of marked edge `(u, v)` for sets of `size` vertices.
    fn contributions(&self, u: usize, v: usize, size: usize, rank: &FastMap<Arc, usize>) -> Contribution {
        let my_rank = rank[&(u, v)];
        let cands: Vec<usize> = self.out[u].iter().copied().filter(|&w| w != v).collect();
        let mut dt = 0;
        let mut updates = Vec::new();
        for_each_subset(&cands, size - 2, &mut |t| {
            // (u, v) must be the earliest marked edge from u into T′.
            if t.iter().any(|&w| rank.get(&(u, w)).is_some_and(|&r| r < my_rank)) {
                return;
            }
            let mut tp: Vec<usize> = t.iter().copied().chain([u, v]).collect();
            tp.sort_unstable();
            let w = self.value(&tp);
            if w == 0 {
                return;
            }
            let rest: Vec<usize> = tp.iter().copied().filter(|&x| x != u).collect();
            let complete = rest.iter().enumerate().all(|(i, &a)| rest[i + 1..].iter().all(|&b| self.adjacent(a, b)));
            if complete {
                dt += w;
            }
            let mut s = rest;
            while s.len() >= 2 && s.len() < self.k {
                updates.push((s.clone(), w));
                match source_of(&s, |a, b| self.arc(a, b)) {
                    Some(src) => s.retain(|&x| x != src),
                    None => break,
                }
            }
        });
        (dt, updates)
    }
}

/// Calls `f` on every `r`-subset of `items`, each in ascending position order.
fn for_each_subset(items: &[usize], r: usize, f: &mut impl FnMut(&[usize])) {
    fn go(items: &[usize], r: usize, start: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if buf.len() == r {
            f(buf);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < r - buf.len() {
                break;
            }
            buf.push(items[i]);
            go(items, r, i + 1, buf, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(r);
    go(items, r, 0, &mut buf, f);
}

impl ProblemHooks for CliqueCounter {
    fn batch_flips(
        &mut self,
        _: &DynamicGraph,
        flips: &[Arc],
        ins: &mut Vec<Arc>,
        del: &mut Vec<Arc>,
    ) -> anyhow::Result<()> {
        for &(u, v) in flips {
            del.push((u, v));
            ins.push((v, u));
        }
        Ok(())
    }

    fn batch_delete(&mut self, _: &DynamicGraph, del: &[Arc]) -> anyhow::Result<()> {
        for &(u, v) in del {
            anyhow::ensure!(self.arc(u, v), "deleted arc ({u}, {v}) not present");
        }
        self.stage(del, -1);
        for &(u, v) in del {
            self.out[u].remove(&v);
        }
        self.check_nonnegative()
    }

    fn batch_insert(&mut self, _: &DynamicGraph, ins: &[Arc]) -> anyhow::Result<()> {
        let mut seen = FastSet::default();
        for &(u, v) in ins {
            anyhow::ensure!(
                !self.adjacent(u, v) && seen.insert((u.min(v), u.max(v))),
                "arc ({u}, {v}) already present"
            );
            self.out[u].insert(v);
        }
        self.stage(ins, 1);
        self.check_nonnegative()
    }

    fn resize(&mut self, n: usize) {
        if n > self.out.len() {
            self.out.resize(n, BTreeSet::new());
        }
    }
}

impl CliqueCounter {
    fn check_nonnegative(&self) -> anyhow::Result<()> {
        anyhow::ensure!(self.total >= 0, "clique total went negative");
        for table in &self.tables {
            if let Some((key, c)) = table.iter().find(|(_, &c)| c < 0) {
                anyhow::bail!("negative count {c} for {key:?}");
            }
        }
        Ok(())
    }
}
