//! Event-timeline evaluation suite.
//!
//! Timelines describe requested events on a clip; annotation overlays
//! record what human graders observed. On top of those this crate
//! computes:
//!
//! * event-level grading: occurrence, temporal error, order accuracy,
//!   overlap accuracy, and the constraint satisfaction rate ([`metrics`]),
//! * structural validity rules for timelines ([`validate`]),
//! * corpus statistics ([`stats`]),
//! * trajectory alignment metrics over external feature sequences
//!   ([`trajectory`]),
//! * the JSON file formats for both documents ([`schema`]).

pub mod error;
pub mod event;
pub mod metrics;
pub mod schema;
pub mod stats;
pub mod trajectory;
pub mod validate;

pub use error::{Error, Result, SchemaIssue};
pub use event::{Event, EventAnnotation, Timeline, CENTER_TIE_EPS, OCCURRENCE_THRESHOLD};
pub use metrics::{
    occurrence, order_accuracy, overlap_accuracy, tcsr, temporal_error, ConstraintBreakdown,
    TcsrReport, DEFAULT_TOLERANCE,
};
pub use stats::{corpus_stats, CorpusStats};
pub use trajectory::{
    dtw_cost, emd_1d, event_coverage_mass, event_window_similarity, ndtw, Distance,
};
pub use validate::{validate_timeline, Rule, Violation, GRID_STEP, MIN_DURATION};
