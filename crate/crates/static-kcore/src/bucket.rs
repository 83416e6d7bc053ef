use std::collections::BTreeMap;

use graph_core::FastSet;

/// Map from bucket index to the vertices currently in it.
#[derive(Clone, Debug, Default)]
pub struct BucketQueue {
    buckets: BTreeMap<usize, FastSet<usize>>,
    bucket_of: Vec<Option<usize>>,
}

impl BucketQueue {
    pub fn new(n: usize) -> Self {
        BucketQueue { buckets: BTreeMap::new(), bucket_of: vec![None; n] }
    }

    pub fn bucket_of(&self, v: usize) -> Option<usize> {
        self.bucket_of[v]
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.is_empty()
    }

    /// Places `v` in bucket `b`, moving it if it is already queued.
    pub fn set(&mut self, v: usize, b: usize) {
        if let Some(old) = self.bucket_of[v] {
            if old == b {
                return;
            }
            self.detach(v, old);
        }
        self.buckets.entry(b).or_default().insert(v);
        self.bucket_of[v] = Some(b);
    }

    fn detach(&mut self, v: usize, b: usize) {
        if let Some(set) = self.buckets.get_mut(&b) {
            set.remove(&v);
            if set.is_empty() {
                self.buckets.remove(&b);
            }
        }
    }

    pub fn min_bucket(&self) -> Option<usize> {
        self.buckets.keys().next().copied()
    }

    /// Removes the lowest non-empty bucket and returns its index and members (sorted).
    pub fn pop_min(&mut self) -> Option<(usize, Vec<usize>)> {
        let (b, set) = self.buckets.pop_first()?;
        let mut members: Vec<usize> = set.into_iter().collect();
        members.sort_unstable();
        for &v in &members {
            self.bucket_of[v] = None;
        }
        Some((b, members))
    }
}
