use std::path::PathBuf;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by summary ingestion, matrix construction and matching.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty summary")]
    EmptySummary,

    #[error("empty image")]
    EmptyImage,

    #[error("feature dimension mismatch: {left} vs {right}")]
    FeatureDimensionMismatch { left: usize, right: usize },

    #[error("invalid feature vector: {0}")]
    InvalidFeature(String),

    #[error("invalid summary: {0}")]
    InvalidSummary(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid threshold: {0}")]
    InvalidThreshold(f64),

    #[error("invalid penalty: {0}")]
    InvalidPenalty(f64),

    #[error("pair index out of range: ({row}, {col}) in {rows}x{cols} matrix")]
    PairIndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("cardinality {k} out of range 0..={max}")]
    CardinalityOutOfRange { k: usize, max: usize },

    #[error("invalid counts: {0}")]
    InvalidCounts(String),

    #[error("ragged matrix: row {row} has {got} columns, expected {expected}")]
    RaggedMatrix {
        row: usize,
        got: usize,
        expected: usize,
    },

    #[error("negative distance at row {row}, column {col}: {value}")]
    NegativeDistance { row: usize, col: usize, value: f64 },

    #[error("invalid distance at row {row}, column {col}: {token:?}")]
    InvalidDistance {
        row: usize,
        col: usize,
        token: String,
    },

    #[error("cannot decode image {path}: {source}")]
    ImageDecode {
        path: PathBuf,
        source: image::ImageError,
    },

    #[error("invalid report: {0}")]
    InvalidReport(String),

    #[error("invalid curve file: {0}")]
    InvalidCurve(String),

    #[error("dataset layout: {0}")]
    DatasetLayout(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
