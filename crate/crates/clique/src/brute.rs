use graph_core::Graph;

/// Number of k-cliques in `g` by direct enumeration.
///
/// # Panics
/// If `k < 3`.
pub fn brute_force_count(g: &Graph, k: usize) -> u64 {
    assert!(k >= 3, "clique size must be at least 3");
    let adj: Vec<Vec<usize>> =
        (0..g.num_vertices()).map(|v| g.sorted_neighbors(v).into_iter().filter(|&w| w > v).collect()).collect();
    let mut total = 0;
    for higher in &adj {
        extend(g, higher, k - 1, &mut total);
    }
    total
}

/// Counts ways to pick `left` more mutually adjacent vertices from `cands` (ascending ids).
fn extend(g: &Graph, cands: &[usize], left: usize, total: &mut u64) {
    if left == 0 {
        *total += 1;
        return;
    }
    for (i, &w) in cands.iter().enumerate() {
        let next: Vec<usize> = cands[i + 1..].iter().copied().filter(|&x| g.has_edge(w, x)).collect();
        extend(g, &next, left - 1, total);
    }
}
