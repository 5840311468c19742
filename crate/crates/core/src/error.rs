use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to parse manifest {path}: {message}")]
    ManifestParse { path: PathBuf, message: String },

    #[error("invalid manifest {path}: {message}")]
    ManifestInvalid { path: PathBuf, message: String },

    #[error("missing brick {path}")]
    MissingBrick { path: PathBuf },

    #[error("brick {path} has {actual} bytes, expected {expected}")]
    BrickSize {
        path: PathBuf,
        expected: u64,
        actual: u64,
    },

    #[error("non-finite value {value} in brick {source_name} at value offset {offset}")]
    NonFinite {
        source_name: String,
        offset: usize,
        value: f32,
    },

    #[error("invalid dimensions: {0}")]
    InvalidDims(String),

    #[error("correlation {0} outside [-1, 1]")]
    InvalidCorrelation(f64),

    #[error("{what} index {index} out of range (len {len})")]
    OutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("no active grid points for member {member}")]
    EmptySelection { member: usize },

    #[error("axis order is not a permutation of the variables: {0}")]
    BadOrder(String),

    #[error("invalid brush: {0}")]
    BadBrush(String),

    #[error("invalid bin rule: {0}")]
    BadRule(String),

    #[error("cannot bin an empty value set")]
    NoValues,

    #[error("no ADP point for member {member} in pair {pair}")]
    MissingAdpPoint { member: usize, pair: usize },

    #[error("samples per segment must be at least 2, got {0}")]
    TooFewSamples(usize),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
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
