//! Deterministic report artifacts: the ranking CSV, a bar chart and a radar
//! chart of the composite scores. Output contains no timestamps or host data,
//! so the same inputs always give the same bytes.

mod csv;
mod results;
mod svg;

pub use self::csv::emit_ranking_csv;
pub use results::{emit_results_document, parse_results_document, ResultsDocument};
pub use svg::{emit_bar_chart_svg, emit_radar_chart_svg, PALETTE};

use crate::indicator::{rank, CompositeResult, IndicatorError, RankRow, RatioTable};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReportError {
    #[error("subject `{subject}` has no ratio for `{indicator}`")]
    MissingRatio { subject: String, indicator: String },
    #[error("results document: {0}")]
    Schema(String),
    #[error(transparent)]
    Indicator(#[from] IndicatorError),
}

pub const GENERATED_NOTE: &str = "generated by unibench";

#[derive(Debug, Clone, PartialEq)]
pub struct ReportBundle {
    pub ranking: Vec<RankRow>,
    pub ratio_table: RatioTable,
    pub results: Vec<CompositeResult>,
    pub generated_note: String,
}

impl ReportBundle {
    pub fn new(
        results: Vec<CompositeResult>,
        ratio_table: RatioTable,
    ) -> Result<Self, ReportError> {
        Ok(ReportBundle {
            ranking: rank(&results)?,
            ratio_table,
            results,
            generated_note: GENERATED_NOTE.to_string(),
        })
    }

    pub(crate) fn result(&self, subject_id: &str) -> Option<&CompositeResult> {
        self.results.iter().find(|r| r.subject_id == subject_id)
    }

    /// Indicator ids in first-seen order, walking results in rank order.
    pub fn indicator_columns(&self) -> Vec<String> {
        let mut cols: Vec<String> = Vec::new();
        for row in &self.ranking {
            if let Some(r) = self.result(&row.subject_id) {
                for iid in &r.included_indicators {
                    if !cols.contains(iid) {
                        cols.push(iid.clone());
                    }
                }
            }
        }
        cols
    }
}
