use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("batch file: {0}")]
    Csv(#[from] csv::Error),
    #[error("batch size must be at least 1")]
    ZeroBatchSize,
    #[error("mixed batch of size {batch_size} needs {needed} distinct edges but the graph has {available}")]
    MixTooLarge { batch_size: usize, needed: usize, available: usize },
}
