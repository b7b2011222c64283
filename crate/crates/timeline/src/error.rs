//! Error type for timeline parsing, grading, and trajectory metrics.

use std::path::PathBuf;

use thiserror::Error;

/// A semantic problem found in a parsed file, with a JSON-ish path to the
/// offending value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaIssue {
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for SchemaIssue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("metric input is empty")]
    EmptyInput,

    #[error("metric needs at least two events")]
    TooFewEvents,

    #[error("no comparable event pairs (all target centers coincide)")]
    NoComparablePairs,

    #[error("no overlapping event pairs in the prompt (metric not applicable)")]
    NoOverlappingPairs,

    #[error("event {id} occurred but is missing a boundary bias")]
    MissingBias { id: String },

    #[error("event {id} did not occur but carries boundary biases")]
    UnexpectedBias { id: String },

    #[error("occurrence for event {id} must lie in [0, 1], got {value}")]
    BadOccurrence { id: String, value: f64 },

    #[error("duplicate event id `{0}`")]
    DuplicateEventId(String),

    #[error("clip duration must be positive and finite, got {0}")]
    BadClipDuration(f64),

    #[error("tolerance must be nonnegative and finite, got {0}")]
    BadTolerance(f64),

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("sequence is empty")]
    EmptySequence,

    #[error("feature vectors disagree in dimension ({0} vs {1})")]
    DimensionMismatch(usize, usize),

    #[error("grid and mass lengths differ ({grid} vs {mass})")]
    GridMismatch { grid: usize, mass: usize },

    #[error("temporal grid must be non-decreasing")]
    UnsortedGrid,

    #[error("mass function contains a negative entry")]
    NegativeMass,

    #[error("mass function has zero total mass")]
    ZeroMass,

    #[error(transparent)]
    Interval(#[from] tie_core::Error),

    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {} schema issue(s), first: {}", issues.len(), issues.first().map(ToString::to_string).unwrap_or_default())]
    Schema {
        path: String,
        issues: Vec<SchemaIssue>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
