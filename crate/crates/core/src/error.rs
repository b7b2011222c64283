//! Error type shared by the encoding, oracle, scoring, and robustness APIs.

use thiserror::Error;

/// Errors returned by the numeric core.
///
/// Payloads are `f64` regardless of the scalar type the caller works in, so
/// the enum stays non-generic and cheap to match on.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be an even integer >= 2, got {0}")]
    BadDimension(usize),

    #[error("boundary encoding needs a dimension divisible by 4, got {0}")]
    UnsplittableDimension(usize),

    #[error("frequency base must be a finite number above 1, got {0}")]
    BadBase(f64),

    #[error("parameter `{name}` must be positive and finite, got {value}")]
    BadParameter { name: &'static str, value: f64 },

    #[error("timestamp must be finite, got {0}")]
    NonFiniteTime(f64),

    #[error("interval end {end} precedes start {start}")]
    ReversedInterval { start: f64, end: f64 },

    #[error("vector length {len} does not match encoder dimension {dim}")]
    LengthMismatch { len: usize, dim: usize },

    #[error(
        "normalization constant {c_value} is within {epsilon} of zero at scaled radius {scaled_radius}"
    )]
    DegenerateNormalization {
        c_value: f64,
        scaled_radius: f64,
        epsilon: f64,
    },

    #[error("gauss-legendre quadrature only applies to uniform kernels")]
    QuadratureKindMismatch,

    #[error("kernel support is empty")]
    EmptyKernel,

    #[error("sampled kernel weights must be nonnegative and sum to 1, got sum {0}")]
    BadKernelWeights(f64),

    #[error("quadrature needs at least one node")]
    NoQuadratureNodes,

    #[error("noise bound requires 0 <= delta < r, got delta {delta}, r {r}")]
    DeltaOutOfRange { delta: f64, r: f64 },

    #[error("c_min must be positive, got {0}")]
    NonPositiveCMin(f64),

    #[error("event {index} cannot be encoded: {source}")]
    DegenerateEvent { index: usize, source: Box<Error> },

    #[error("frame times must be strictly increasing (violation at index {0})")]
    NonMonotonicTimes(usize),

    #[error("frame grid holds {times} timestamps but {queries} query vectors")]
    GridShapeMismatch { times: usize, queries: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
