use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

/// Outcome of the per-batch checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// One CSV row per batch. Columns that do not apply to the problem are empty.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub batch: usize,
    pub insertions: usize,
    pub deletions: usize,
    pub edges: usize,
    pub seconds: f64,
    pub moves: Option<usize>,
    pub flips: Option<usize>,
    pub avg_error: Option<f64>,
    pub max_error: Option<f64>,
    pub invariants: Verdict,
    pub violations: usize,
    pub matching_size: Option<usize>,
    pub clique_total: Option<u64>,
    pub colors: Option<usize>,
    pub max_out_degree: Option<usize>,
}

impl MetricsRow {
    pub fn new(batch: usize) -> Self {
        MetricsRow {
            batch,
            insertions: 0,
            deletions: 0,
            edges: 0,
            seconds: 0.0,
            moves: None,
            flips: None,
            avg_error: None,
            max_error: None,
            invariants: Verdict::Skipped,
            violations: 0,
            matching_size: None,
            clique_total: None,
            colors: None,
            max_out_degree: None,
        }
    }
}

pub fn write_metrics_csv<W: Write>(rows: &[MetricsRow], out: W) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_metrics_csv<R: Read>(input: R) -> Result<Vec<MetricsRow>, csv::Error> {
    csv::Reader::from_reader(input).deserialize().collect()
}

/// Mean and maximum of `max(k̂/k, k/k̂)` over vertices with `k > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorRatio {
    pub avg: f64,
    pub max: f64,
    /// Vertices with `k > 0` but a zero estimate; their ratio counts as infinite.
    pub zero_estimates: usize,
    pub counted: usize,
}

/// Compares estimates to exact coreness. Vertices with exact coreness 0 are ignored;
/// with none left the result is `(1, 1)`.
///
/// # Panics
/// If the slices differ in length.
pub fn error_ratio(estimates: &[f64], exact: &[usize]) -> ErrorRatio {
    assert_eq!(estimates.len(), exact.len(), "estimate and exact vectors differ in length");
    let mut sum = 0.0;
    let mut max: f64 = 1.0;
    let mut zero = 0;
    let mut counted = 0;
    for (&e, &k) in estimates.iter().zip(exact) {
        if k == 0 {
            continue;
        }
        counted += 1;
        let r = if e <= 0.0 {
            zero += 1;
            f64::INFINITY
        } else {
            let k = k as f64;
            (e / k).max(k / e)
        };
        sum += r;
        max = max.max(r);
    }
    let avg = if counted == 0 { 1.0 } else { sum / counted as f64 };
    ErrorRatio { avg, max, zero_estimates: zero, counted }
}
