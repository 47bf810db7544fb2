//! Composite performance indicators over heterogeneous hardware and software
//! measurements.
//!
//! Measurements are normalized into dimensionless ratios against a reference
//! subject, multiplied into per-profile products and folded into a single
//! geometric-mean score per subject (the CMI). The crate also ships the block
//! cipher corpus and timing harness used to produce software measurements,
//! parsers for ingested hardware/profiler figures, and deterministic report
//! emitters.

pub mod bench;
pub mod cipher;
pub mod cli;
pub mod fmt;
pub mod indicator;
pub mod ingest;
pub mod report;

pub use indicator::{
    build_ratio_table, compose_all, compose_cmi, compose_profile, default_li_catalog,
    normalize_ratio, rank, rank_scores, Catalog, CompositeResult, Directionality, IndicatorError,
    IndicatorSpec, Measurement, ProfileSpec, RankRow, RatioTable, Source, SubjectRecord,
};
