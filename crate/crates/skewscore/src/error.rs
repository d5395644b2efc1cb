//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by evaluation, weighting, statistics and file loading.
#[derive(Debug, Error)]
pub enum Error {
    /// A class label must be a non-empty string.
    #[error("class label must be non-empty")]
    EmptyLabel,

    /// An evaluation run needs at least one gold/predicted pair.
    #[error("evaluation run contains no label pairs")]
    EmptyRun,

    /// The F-beta trade-off coefficient must be a positive real.
    #[error("beta must be positive and finite, got {0}")]
    InvalidBeta(f64),

    /// Micro scoring that excludes the negative class needs to know which
    /// label is the negative one.
    #[error("micro scoring with the negative class excluded requires a negative-class label on the run")]
    MissingNaLabel,

    /// A label that is not part of the declared label universe.
    #[error("unknown label {label:?} (not in the supplied label list)")]
    UnknownLabel { label: String },

    /// Class counts must be non-empty with strictly positive counts.
    #[error("class counts are empty")]
    EmptyCounts,

    /// Micro is a pooled computation, not a weight vector.
    #[error("scheme {0} does not define a per-class weight vector")]
    UnsupportedScheme(String),

    /// The power-family exponent is restricted to [0, 1].
    #[error("power exponent must lie in [0, 1], got {0}")]
    InvalidPower(f64),

    /// All raw weights came out zero (e.g. entropy of a single class).
    #[error("degenerate distribution: {0}")]
    DegenerateDistribution(String),

    /// Mismatched class sets or other structurally inconsistent inputs.
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    /// Weight vectors must be normalized with non-negative entries.
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    /// Run-score groups need more than one run.
    #[error("a run group needs at least 2 runs, got {0}")]
    TooFewRuns(usize),

    /// Scores must be finite reals.
    #[error("non-finite score in run group {model_id:?}")]
    NonFiniteScore { model_id: String },

    /// The equal-n effect-size formula does not apply to unequal group sizes.
    #[error("effect size requires equal run counts, got {a} and {b}")]
    UnequalRunCounts { a: usize, b: usize },

    /// Both groups have zero variance; the standardized difference is undefined.
    #[error("both run groups have zero variance")]
    DegenerateVariance,

    /// Run files grouped into one sample must come from the same model.
    #[error("run files disagree on model id: expected {expected:?}, found {found:?}")]
    ModelIdMismatch { expected: String, found: String },

    /// File format could not be inferred from the extension.
    #[error("cannot infer run-file format from {path:?}; expected a .tsv or .jsonl extension")]
    UnknownFormat { path: PathBuf },

    /// A malformed line in a prediction or label file.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    /// An empty input file.
    #[error("{path}: file contains no records")]
    EmptyFile { path: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("csv output error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
