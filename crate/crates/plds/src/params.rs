use crate::PldsError;

/// Tuning knobs. `divisor = 1` is the exact-theory layout, `50` the
/// reduced-level variant used in practice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PldsParams {
    pub delta: f64,
    pub lambda: f64,
    pub levels_per_group_divisor: usize,
    pub capacity_n: usize,
}

impl PldsParams {
    pub fn new(delta: f64, lambda: f64, divisor: usize, capacity_n: usize) -> Self {
        PldsParams { delta, lambda, levels_per_group_divisor: divisor, capacity_n }
    }

    pub fn validate(&self) -> Result<(), PldsError> {
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return Err(PldsError::InvalidParams(format!("delta must be positive, got {}", self.delta)));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(PldsError::InvalidParams(format!("lambda must be positive, got {}", self.lambda)));
        }
        if self.levels_per_group_divisor == 0 {
            return Err(PldsError::InvalidParams("levels-per-group divisor must be at least 1".into()));
        }
        Ok(())
    }

    /// `⌈log_{1+δ} n⌉`, with `n ≤ 1` giving 0.
    pub fn log_levels(&self) -> usize {
        let n = self.capacity_n.max(1) as f64;
        let raw = n.ln() / (1.0 + self.delta).ln();
        // Snap values that are integral up to rounding noise before taking the ceiling.
        let snapped = raw.round();
        if (raw - snapped).abs() < 1e-9 {
            snapped as usize
        } else {
            raw.ceil() as usize
        }
    }

    /// `max(1, ⌈L / divisor⌉)` where `L = ⌈log_{1+δ} n⌉`.
    pub fn levels_per_group(&self) -> usize {
        self.log_levels().div_ceil(self.levels_per_group_divisor).max(1)
    }

    pub fn geometry(&self) -> Geometry {
        Geometry::new(4 * self.levels_per_group(), self.log_levels() + 1)
    }
}

/// Level layout: `num_groups` groups of `group_size` consecutive levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Geometry {
    group_size: usize,
    num_groups: usize,
}

impl Geometry {
    /// Explicit layout, mainly for small hand-built instances.
    pub fn new(group_size: usize, num_groups: usize) -> Self {
        assert!(group_size >= 1 && num_groups >= 1, "empty level layout");
        Geometry { group_size, num_groups }
    }

    /// Levels per group as used by the group index (`4·levels_per_group` for parameter-derived layouts).
    pub fn group_size(&self) -> usize {
        self.group_size
    }

    pub fn num_groups(&self) -> usize {
        self.num_groups
    }

    /// Total number of levels `K`.
    pub fn num_levels(&self) -> usize {
        self.group_size * self.num_groups
    }

    pub fn group_of_level(&self, level: usize) -> usize {
        assert!(level < self.num_levels(), "level {level} outside [0, {})", self.num_levels());
        (level / self.group_size).min(self.num_groups - 1)
    }
}
