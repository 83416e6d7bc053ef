use graph_core::{FastMap, Graph};
use rayon::prelude::*;

use crate::BucketQueue;

/// Round-based approximate peeling.
///
/// Vertices sit in bucket `⌈log_{1+ε} C[v]⌉` where `C[v]` starts at the
/// degree. Each outer step opens the lowest bucket `t` and runs up to
/// `⌈log_{1+δ} n⌉` peeling rounds; a round may continue into the next bucket
/// while `(1+ε)^{next} ≤ (2+ε)(1+ε)^t` (ties continue). A vertex peeled from
/// bucket `b` gets the estimate `(1+ε)^b`; isolated vertices get 0.
#[derive(Clone, Copy, Debug)]
pub struct ApproxKcore {
    eps: f64,
    delta: f64,
    parallel: bool,
}

impl ApproxKcore {
    /// Parameters for a `(2+ε′)` guarantee: `ε = (√(4ε′+9) − 3)/2`, `δ = 2/ε`.
    ///
    /// # Panics
    /// If `eps_prime` is not positive.
    pub fn new(eps_prime: f64) -> Self {
        assert!(eps_prime > 0.0, "eps_prime must be positive");
        let eps = ((4.0 * eps_prime + 9.0).sqrt() - 3.0) / 2.0;
        Self::with_raw(eps, 2.0 / eps)
    }

    /// Uses `ε` and `δ` directly.
    pub fn with_raw(eps: f64, delta: f64) -> Self {
        assert!(eps > 0.0 && delta > 0.0, "eps and delta must be positive");
        ApproxKcore { eps, delta, parallel: false }
    }

    pub fn parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn run(&self, g: &Graph) -> Vec<f64> {
        let n = g.num_vertices();
        let base = 1.0 + self.eps;
        let mut estimate = vec![0.0; n];
        let mut peeled = vec![false; n];
        let mut c: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        let mut queue = BucketQueue::new(n);
        for v in 0..n {
            if c[v] == 0 {
                peeled[v] = true;
            } else {
                queue.set(v, bucket_index(c[v], base));
            }
        }
        let rounds = ceil_log(n.max(2) as f64, 1.0 + self.delta).max(1);

        while let Some((bkt, first)) = queue.pop_min() {
            let t = bkt;
            let floor = base.powi(t as i32 - 1).ceil() as usize;
            let cutoff = (2.0 + self.eps) * base.powi(t as i32);
            let (mut cur_bkt, mut frontier) = (bkt, first);
            for _ in 0..rounds {
                let value = base.powi(cur_bkt as i32);
                for &v in &frontier {
                    estimate[v] = value;
                    peeled[v] = true;
                }
                for (w, r) in self.removed_counts(g, &frontier, &peeled) {
                    let induced = c[w] - r;
                    c[w] = induced.max(floor);
                    queue.set(w, bucket_index(c[w], base).max(t));
                }
                match queue.min_bucket() {
                    Some(next) if base.powi(next as i32) <= cutoff => {
                        let (b, members) = queue.pop_min().expect("bucket just seen");
                        cur_bkt = b;
                        frontier = members;
                    }
                    _ => break,
                }
            }
            // Rounds exhausted with a frontier still open: it was popped but
            // not peeled, so put it back for the next outer step.
            if frontier.iter().any(|&v| !peeled[v]) {
                for &v in &frontier {
                    queue.set(v, cur_bkt);
                }
            }
        }
        estimate
    }

    /// `(v, r_v)` for unpeeled neighbors of the frontier, sorted by vertex.
    fn removed_counts(&self, g: &Graph, frontier: &[usize], peeled: &[bool]) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = if self.parallel && frontier.len() > 256 {
            let mut hits: Vec<usize> =
                frontier.par_iter().flat_map_iter(|&v| g.neighbors(v).filter(|&w| !peeled[w])).collect();
            hits.par_sort_unstable();
            let mut grouped = Vec::new();
            for w in hits {
                match grouped.last_mut() {
                    Some((last, r)) if *last == w => *r += 1,
                    _ => grouped.push((w, 1)),
                }
            }
            return grouped;
        } else {
            let mut counts: FastMap<usize, usize> = FastMap::default();
            for &v in frontier {
                for w in g.neighbors(v).filter(|&w| !peeled[w]) {
                    *counts.entry(w).or_default() += 1;
                }
            }
            counts.into_iter().collect()
        };
        out.sort_unstable();
        out
    }
}

/// Approximate coreness with the `(2+ε′)` parameterisation, serial.
pub fn approx_kcore_static(g: &Graph, eps_prime: f64) -> Vec<f64> {
    ApproxKcore::new(eps_prime).run(g)
}

/// Smallest `b ≥ 0` with `base^b ≥ c`, tolerant to rounding at exact powers.
fn bucket_index(c: usize, base: f64) -> usize {
    if c <= 1 {
        return 0;
    }
    ceil_log(c as f64, base)
}

fn ceil_log(x: f64, base: f64) -> usize {
    let raw = x.ln() / base.ln();
    let near = raw.round();
    if (raw - near).abs() < 1e-9 {
        near.max(0.0) as usize
    } else {
        raw.ceil().max(0.0) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_mapping() {
        let a = ApproxKcore::new(1.0);
        assert!((a.eps() - (13f64.sqrt() - 3.0) / 2.0).abs() < 1e-12);
        assert!((a.delta() - 2.0 / a.eps()).abs() < 1e-12);
    }

    #[test]
    fn buckets_at_exact_powers() {
        assert_eq!(bucket_index(1, 2.0), 0);
        assert_eq!(bucket_index(2, 2.0), 1);
        assert_eq!(bucket_index(3, 2.0), 2);
        assert_eq!(bucket_index(4, 2.0), 2);
        assert_eq!(bucket_index(8, 2.0), 3);
    }

    #[test]
    fn empty_graph() {
        assert!(approx_kcore_static(&Graph::new(0), 1.0).is_empty());
        assert_eq!(approx_kcore_static(&Graph::new(3), 1.0), vec![0.0; 3]);
    }
}
