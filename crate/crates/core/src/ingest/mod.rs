//! Parsers for external measurement sources.
//!
//! Three narrow text formats are supported: the canonical JSON measurement
//! document, a profiler CSV export and a `key: value` synthesis summary. Every
//! parser has a matching emitter and turns malformed input into a
//! [`IngestError::Schema`] carrying a location.

mod canonical;
mod merge;
mod profiler;
mod synthesis;

pub use canonical::{emit_canonical, parse_canonical};
pub use merge::merge_records;
pub use profiler::{
    emit_profiler_csv, parse_profiler_csv, profiler_records, profiler_to_measurements,
    ProfilerExport, PROFILER_HEADER,
};
pub use synthesis::{
    emit_synthesis_summary, parse_synthesis_summary, synthesis_to_measurements, SynthesisSummary,
};

use crate::indicator::IndicatorError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IngestError {
    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },

    #[error(
        "unit mismatch for `{indicator}`: document says `{found}`, catalog expects `{expected}`"
    )]
    UnitMismatch {
        indicator: String,
        found: String,
        expected: String,
    },

    #[error("conflicting values for `{subject}`/`{indicator}`: {value_a} vs {value_b}")]
    ConflictingMeasurement {
        subject: String,
        indicator: String,
        value_a: f64,
        value_b: f64,
    },

    #[error(transparent)]
    Indicator(#[from] IndicatorError),
}

impl IngestError {
    pub(crate) fn schema(location: impl Into<String>, message: impl Into<String>) -> Self {
        IngestError::Schema {
            location: location.into(),
            message: message.into(),
        }
    }
}

/// Knobs shared by the parsers.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IngestOptions {
    /// When set, non-positive derived or declared values are replaced by this
    /// floor (with a warning) instead of failing.
    pub clamp_epsilon: Option<f64>,
}

pub(crate) fn is_subject_id(s: &str) -> bool {
    !s.is_empty()
        && s.bytes()
            .all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_' || b == b'-')
}
