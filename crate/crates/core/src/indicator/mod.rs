//! Indicator data model and composition math.
//!
//! A *catalog* lists key indicators, each owned by exactly one profile and
//! carrying a [`Directionality`]. Subject measurements are normalized against
//! a reference subject into a [`RatioTable`] where every ratio is oriented so
//! that larger means better. Per-profile products and the overall CMI (the
//! geometric mean of all present ratios) are computed from that table in log
//! space.

mod catalog;
mod compose;
mod rank;
mod ratio;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use catalog::{default_li_catalog, Catalog, IndicatorSpec, ProfileSpec};
pub use compose::{compose_all, compose_cmi, compose_profile, CompositeResult};
pub use rank::{rank, rank_scores, RankRow};
pub use ratio::{build_ratio_table, normalize_ratio, RatioTable};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IndicatorError {
    #[error("measurement must be positive and finite, got {value} ({context})")]
    NonPositiveMeasurement { value: f64, context: String },

    #[error("reference subject `{0}` not found")]
    UnknownReference(String),

    #[error("reference subject lacks a measurement for indicator `{0}`")]
    MissingReferenceMeasurement(String),

    #[error("indicator `{0}` is not in the catalog")]
    UnknownIndicator(String),

    #[error("subject `{subject}` has no ratios in profile `{profile}`")]
    EmptyProfileForSubject { subject: String, profile: String },

    #[error("subject `{0}` has no ratios at all")]
    EmptyRecord(String),

    #[error("subject `{0}` appears more than once")]
    DuplicateSubject(String),

    #[error("subject `{subject}` has two measurements for `{indicator}`")]
    DuplicateMeasurement { subject: String, indicator: String },

    #[error("invalid catalog: {0}")]
    InvalidCatalog(String),

    #[error("clamp epsilon must be positive and finite, got {0}")]
    InvalidClamp(f64),
}

/// Whether larger raw values of an indicator improve or worsen the score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Directionality {
    HigherIsBetter,
    LowerIsBetter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Measured,
    #[default]
    Ingested,
    Fixture,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Measured => "measured",
            Source::Ingested => "ingested",
            Source::Fixture => "fixture",
        }
    }
}

/// One measured quantity for one indicator. The value is always positive and
/// finite once constructed.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub indicator_id: String,
    pub value: f64,
    pub source: Source,
    pub detail: String,
}

impl Measurement {
    pub fn new(
        indicator_id: impl Into<String>,
        value: f64,
        source: Source,
        detail: impl Into<String>,
    ) -> Result<Self, IndicatorError> {
        let indicator_id = indicator_id.into();
        check_positive(value, &indicator_id)?;
        Ok(Measurement {
            indicator_id,
            value,
            source,
            detail: detail.into(),
        })
    }
}

/// All measurements for one subject, keyed by indicator id.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SubjectRecord {
    pub subject_id: String,
    pub measurements: BTreeMap<String, Measurement>,
}

impl SubjectRecord {
    pub fn new(subject_id: impl Into<String>) -> Self {
        SubjectRecord {
            subject_id: subject_id.into(),
            measurements: BTreeMap::new(),
        }
    }

    /// Adds a measurement; a second measurement for the same indicator is
    /// rejected.
    pub fn insert(&mut self, m: Measurement) -> Result<(), IndicatorError> {
        if self.measurements.contains_key(&m.indicator_id) {
            return Err(IndicatorError::DuplicateMeasurement {
                subject: self.subject_id.clone(),
                indicator: m.indicator_id,
            });
        }
        self.measurements.insert(m.indicator_id.clone(), m);
        Ok(())
    }

    pub fn with(mut self, m: Measurement) -> Result<Self, IndicatorError> {
        self.insert(m)?;
        Ok(self)
    }

    pub fn value(&self, indicator_id: &str) -> Option<f64> {
        self.measurements.get(indicator_id).map(|m| m.value)
    }
}

pub(crate) fn check_positive(value: f64, context: &str) -> Result<(), IndicatorError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(IndicatorError::NonPositiveMeasurement {
            value,
            context: context.to_string(),
        })
    }
}

/// Replaces a non-positive value with `epsilon` when a clamp floor is
/// configured. Every clamp pushes a warning. NaN and infinities are never
/// clamped.
pub fn clamp_floor(
    value: f64,
    epsilon: Option<f64>,
    context: &str,
    warnings: &mut Vec<String>,
) -> Result<f64, IndicatorError> {
    if value > 0.0 && value.is_finite() {
        return Ok(value);
    }
    match epsilon {
        Some(eps) if !(eps > 0.0 && eps.is_finite()) => Err(IndicatorError::InvalidClamp(eps)),
        Some(eps) if value.is_finite() => {
            warnings.push(format!("{context}: clamped {value} to {eps}"));
            Ok(eps)
        }
        _ => Err(IndicatorError::NonPositiveMeasurement {
            value,
            context: context.to_string(),
        }),
    }
}
