use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{CompositeResult, IndicatorError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub rank: usize,
    pub subject_id: String,
    pub cmi: f64,
}

/// Orders results by descending CMI with competition ranking (1, 1, 3).
/// Equal scores are listed by ascending subject id.
pub fn rank(results: &[CompositeResult]) -> Result<Vec<RankRow>, IndicatorError> {
    rank_scores(results.iter().map(|r| (r.subject_id.as_str(), r.cmi)))
}

pub fn rank_scores<'a>(
    scores: impl IntoIterator<Item = (&'a str, f64)>,
) -> Result<Vec<RankRow>, IndicatorError> {
    let mut seen = BTreeSet::new();
    let mut rows = Vec::new();
    for (id, cmi) in scores {
        if !seen.insert(id) {
            return Err(IndicatorError::DuplicateSubject(id.to_string()));
        }
        rows.push(RankRow {
            rank: 0,
            subject_id: id.to_string(),
            cmi,
        });
    }
    rows.sort_by(|a, b| {
        b.cmi
            .partial_cmp(&a.cmi)
            .unwrap_or(Ordering::Equal)
            .then_with(|| a.subject_id.cmp(&b.subject_id))
    });
    for i in 0..rows.len() {
        rows[i].rank = if i > 0 && rows[i].cmi == rows[i - 1].cmi {
            rows[i - 1].rank
        } else {
            i + 1
        };
    }
    Ok(rows)
}
