use serde::{Deserialize, Serialize};

use super::{ReportBundle, ReportError};
use crate::indicator::{CompositeResult, RankRow, RatioTable};

/// The file handed from `compose` to `report`: the full-precision ratio
/// table, every composite result and the ranking.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultsDocument {
    pub schema_version: u32,
    pub reference_id: String,
    /// Catalog indicator order, used for chart axes.
    pub indicator_order: Vec<String>,
    pub ratios: Vec<RatioEntry>,
    pub results: Vec<CompositeResult>,
    pub ranking: Vec<RankRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioEntry {
    pub subject_id: String,
    pub indicator_id: String,
    pub ratio: f64,
}

impl ResultsDocument {
    pub fn new(bundle: &ReportBundle, indicator_order: Vec<String>) -> Self {
        ResultsDocument {
            schema_version: 1,
            reference_id: bundle.ratio_table.reference_id.clone(),
            indicator_order,
            ratios: bundle
                .ratio_table
                .entries
                .iter()
                .map(|((s, i), r)| RatioEntry {
                    subject_id: s.clone(),
                    indicator_id: i.clone(),
                    ratio: *r,
                })
                .collect(),
            results: bundle.results.clone(),
            ranking: bundle.ranking.clone(),
        }
    }

    /// Rebuilds the bundle, re-deriving the ranking from the results.
    pub fn to_bundle(&self) -> Result<ReportBundle, ReportError> {
        let mut table = RatioTable::new(&self.reference_id);
        for e in &self.ratios {
            table.insert(&e.subject_id, &e.indicator_id, e.ratio)?;
        }
        let bundle = ReportBundle::new(self.results.clone(), table)?;
        if bundle.ranking != self.ranking {
            return Err(ReportError::Schema(
                "ranking does not match the listed results".into(),
            ));
        }
        Ok(bundle)
    }
}

pub fn emit_results_document(doc: &ResultsDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("results serialize");
    s.push('\n');
    s
}

pub fn parse_results_document(text: &str) -> Result<ResultsDocument, ReportError> {
    let doc: ResultsDocument = serde_json::from_str(text).map_err(|e| {
        ReportError::Schema(format!("line {} column {}: {e}", e.line(), e.column()))
    })?;
    if doc.schema_version != 1 {
        return Err(ReportError::Schema(format!(
            "unsupported schema_version {}",
            doc.schema_version
        )));
    }
    Ok(doc)
}
