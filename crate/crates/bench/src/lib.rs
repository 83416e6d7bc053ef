//! Experiment harness: turns an input graph into an update stream, runs one
//! problem through the batch-dynamic framework (or a static baseline), and
//! records per-batch metrics with optional oracle checks.

mod config;
mod error;
mod metrics;
mod runner;

pub use config::{Problem, RunConfig};
pub use error::BenchError;
pub use metrics::{error_ratio, read_metrics_csv, write_metrics_csv, ErrorRatio, MetricsRow, Verdict};
pub use runner::{run_experiment, run_on_graph, Report, ValueTable};
