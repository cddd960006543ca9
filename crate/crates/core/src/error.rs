use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {op} got {left:?} and {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),

    #[error("matrix is rank deficient: pivot {pivot} at column {column} is below tolerance")]
    RankDeficient { column: usize, pivot: f64 },

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {deviation:e}")]
    NotSymmetric { row: usize, col: usize, deviation: f64 },

    #[error("jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    EigenNoConvergence { sweeps: usize, off: f64 },

    #[error("record {index} has zero norm and cannot be normalized")]
    ZeroNormRecord { index: usize },

    #[error("covariance is singular: eigenvalue {eigenvalue:e} along direction {direction:?}")]
    SingularCovariance { eigenvalue: f64, direction: Vec<f64> },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("attribute {attribute} is constant and cannot be rescaled")]
    ConstantAttribute { attribute: usize },

    #[error("inner product {0} lies outside [-1, 1]; inputs are not unit vectors")]
    InnerProductOutOfRange(f64),

    #[error("integration grid [{lo}, {hi}] does not cover the support [{need_lo}, {need_hi}]")]
    GridTooNarrow {
        lo: f64,
        hi: f64,
        need_lo: f64,
        need_hi: f64,
    },

    #[error("partitioning does not match dataset: {0}")]
    PartitionMismatch(String),

    #[error("{path}: row {row}, column {column}: {message}")]
    Csv {
        path: PathBuf,
        row: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("key file: {0}")]
    KeyFormat(String),
}
