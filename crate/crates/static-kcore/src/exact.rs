use graph_core::Graph;

/// Exact coreness of every vertex by min-degree peeling in `O(n + m)`.
pub fn exact_kcore(g: &Graph) -> Vec<usize> {
    let n = g.num_vertices();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // Counting sort of vertices by degree; `pos[v]` is v's slot in `order`.
    let mut start = vec![0usize; max_deg + 2];
    for &d in &deg {
        start[d + 1] += 1;
    }
    for d in 1..start.len() {
        start[d] += start[d - 1];
    }
    let mut order = vec![0usize; n];
    let mut pos = vec![0usize; n];
    let mut fill = start.clone();
    for v in 0..n {
        pos[v] = fill[deg[v]];
        order[pos[v]] = v;
        fill[deg[v]] += 1;
    }

    for i in 0..n {
        let v = order[i];
        for w in g.neighbors(v) {
            if deg[w] > deg[v] {
                // Swap w to the front of its bucket, then shrink the bucket by one.
                let dw = deg[w];
                let first = start[dw];
                let u = order[first];
                if u != w {
                    order.swap(first, pos[w]);
                    pos[u] = pos[w];
                    pos[w] = first;
                }
                start[dw] += 1;
                deg[w] -= 1;
            }
        }
    }
    deg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_and_clique() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        assert_eq!(exact_kcore(&c5), vec![2; 5]);
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(exact_kcore(&k4), vec![3; 4]);
    }

    #[test]
    fn isolated_and_pendant() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 0), (2, 3)]);
        assert_eq!(exact_kcore(&g), vec![2, 2, 2, 1, 0]);
    }
}
