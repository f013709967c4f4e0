use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = EditError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum EditError {
    #[error("invalid UTF-8 in words mode at byte offset {offset}")]
    Decode { offset: usize },

    #[error("dimension mismatch: {left} symbols vs {right} symbols")]
    Dimension { left: usize, right: usize },

    #[error("symbol {symbol} out of range for alphabet of size {sigma}")]
    SymbolOutOfRange { symbol: usize, sigma: usize },

    #[error("select is 1-indexed; occurrence 0 is undefined")]
    ZeroOccurrence,

    #[error("cell budget exceeded: {requested} cells > limit {limit}; try the adaptive or banded algorithm")]
    ResourceExhausted { requested: u64, limit: u64 },

    #[error("{operation} does not support metric {metric}")]
    UnsupportedMetric { operation: &'static str, metric: String },

    #[error("degenerate swap instance: {0}")]
    Degenerate(&'static str),

    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<EditError>,
    },

    #[error("report: {0}")]
    Csv(#[from] csv::Error),

    #[error("report: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{0}")]
    Parse(String),
}

impl EditError {
    /// Strips file context wrappers.
    pub fn root(&self) -> &EditError {
        match self {
            EditError::InFile { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self.root(), EditError::ResourceExhausted { .. })
    }

    pub fn is_io(&self) -> bool {
        matches!(self.root(), EditError::Io { .. } | EditError::Decode { .. })
    }
}
