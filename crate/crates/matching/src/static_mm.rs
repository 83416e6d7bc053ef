use std::sync::atomic::{AtomicUsize, Ordering};

use graph_core::{canonical, Edge, FastMap, FastSet};
use rayon::prelude::*;

const PAR_CUTOFF: usize = 2048;

/// Maximal matching of the graph formed by `edges`.
///
/// The result is the greedy matching over edges in sorted canonical order.
/// The parallel path reaches the same matching by repeatedly selecting every
/// edge that is the smallest live edge at both of its endpoints.
pub fn static_maximal_matching(edges: &[Edge], parallel: bool) -> Vec<Edge> {
    let mut sorted: Vec<Edge> = edges.iter().map(|&(u, v)| canonical(u, v)).filter(|&(u, v)| u != v).collect();
    sorted.sort_unstable();
    sorted.dedup();
    if parallel && sorted.len() >= PAR_CUTOFF {
        local_min_rounds(&sorted)
    } else {
        greedy(&sorted)
    }
}

fn greedy(sorted: &[Edge]) -> Vec<Edge> {
    let mut used = FastSet::default();
    let mut out = Vec::new();
    for &(u, v) in sorted {
        if !used.contains(&u) && !used.contains(&v) {
            used.insert(u);
            used.insert(v);
            out.push((u, v));
        }
    }
    out
}

fn local_min_rounds(sorted: &[Edge]) -> Vec<Edge> {
    let mut index: FastMap<usize, usize> = FastMap::default();
    for &(u, v) in sorted {
        let next = index.len();
        index.entry(u).or_insert(next);
        let next = index.len();
        index.entry(v).or_insert(next);
    }
    let k = index.len();
    let best: Vec<AtomicUsize> = (0..k).map(|_| AtomicUsize::new(usize::MAX)).collect();
    let matched: Vec<AtomicUsize> = (0..k).map(|_| AtomicUsize::new(0)).collect();
    let mut live: Vec<(usize, usize, usize)> =
        sorted.iter().enumerate().map(|(r, &(u, v))| (r, index[&u], index[&v])).collect();
    let mut chosen: Vec<usize> = Vec::new();
    while !live.is_empty() {
        live.par_iter().for_each(|&(r, a, b)| {
            best[a].fetch_min(r, Ordering::Relaxed);
            best[b].fetch_min(r, Ordering::Relaxed);
        });
        let winners: Vec<usize> = live
            .par_iter()
            .filter(|&&(r, a, b)| best[a].load(Ordering::Relaxed) == r && best[b].load(Ordering::Relaxed) == r)
            .map(|&(r, a, b)| {
                matched[a].store(1, Ordering::Relaxed);
                matched[b].store(1, Ordering::Relaxed);
                r
            })
            .collect();
        chosen.extend(winners);
        live = live
            .into_par_iter()
            .filter(|&(_, a, b)| matched[a].load(Ordering::Relaxed) == 0 && matched[b].load(Ordering::Relaxed) == 0)
            .collect();
        live.par_iter().for_each(|&(_, a, b)| {
            best[a].store(usize::MAX, Ordering::Relaxed);
            best[b].store(usize::MAX, Ordering::Relaxed);
        });
    }
    chosen.sort_unstable();
    chosen.into_iter().map(|r| sorted[r]).collect()
}

/// True when `matching` is a set of disjoint edges from `edges` that no edge of `edges` can extend.
pub fn is_maximal_matching(edges: &[Edge], matching: &[Edge]) -> bool {
    let all: FastSet<Edge> = edges.iter().map(|&(u, v)| canonical(u, v)).collect();
    let mut used = FastSet::default();
    for &(u, v) in matching {
        if !all.contains(&canonical(u, v)) || !used.insert(u) || !used.insert(v) {
            return false;
        }
    }
    all.iter().all(|&(u, v)| used.contains(&u) || used.contains(&v))
}
