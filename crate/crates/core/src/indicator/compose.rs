use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{IndicatorError, ProfileSpec, RatioTable};

/// Composite score for one subject.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositeResult {
    pub subject_id: String,
    /// Product of the present ratios of each profile that had at least one.
    pub profile_products: BTreeMap<String, f64>,
    /// Number of ratios folded into `cmi`.
    pub ratio_count: usize,
    /// Geometric mean of all included ratios.
    pub cmi: f64,
    /// Indicator ids actually used, in profile order.
    pub included_indicators: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl CompositeResult {
    /// Recomputes the CMI as the `l`-th root of the product of the profile
    /// products, independently of the flat log-space route used by
    /// [`compose_cmi`].
    pub fn cmi_via_profiles(&self) -> f64 {
        let product: f64 = self.profile_products.values().product();
        product.powf(1.0 / self.ratio_count as f64)
    }
}

fn present_ratios<'a>(
    table: &'a RatioTable,
    subject_id: &'a str,
    profile: &'a ProfileSpec,
) -> impl Iterator<Item = (&'a str, f64)> + 'a {
    profile
        .indicator_ids
        .iter()
        .filter_map(move |iid| table.get(subject_id, iid).map(|r| (iid.as_str(), r)))
}

fn log_sum(ratios: impl IntoIterator<Item = f64>) -> (f64, usize) {
    ratios
        .into_iter()
        .fold((0.0, 0), |(acc, n), r| (acc + r.ln(), n + 1))
}

/// Plain product of a subject's ratios within one profile, summed in log
/// space.
pub fn compose_profile(
    table: &RatioTable,
    subject_id: &str,
    profile: &ProfileSpec,
) -> Result<f64, IndicatorError> {
    let (logs, n) = log_sum(present_ratios(table, subject_id, profile).map(|(_, r)| r));
    if n == 0 {
        return Err(IndicatorError::EmptyProfileForSubject {
            subject: subject_id.to_string(),
            profile: profile.id.clone(),
        });
    }
    Ok(logs.exp())
}

/// Geometric mean of every ratio the subject has across `profiles`.
///
/// Missing indicators shrink `l` instead of failing; each gap is reported in
/// [`CompositeResult::warnings`].
pub fn compose_cmi(
    table: &RatioTable,
    subject_id: &str,
    profiles: &[ProfileSpec],
) -> Result<CompositeResult, IndicatorError> {
    let mut profile_products = BTreeMap::new();
    let mut included = Vec::new();
    let mut missing = Vec::new();
    let mut total_log = 0.0;

    for profile in profiles {
        let mut profile_log = 0.0;
        let mut n = 0;
        for iid in &profile.indicator_ids {
            match table.get(subject_id, iid) {
                Some(r) => {
                    let l = r.ln();
                    profile_log += l;
                    total_log += l;
                    n += 1;
                    included.push(iid.clone());
                }
                None => missing.push(iid.as_str()),
            }
        }
        if n > 0 {
            profile_products.insert(profile.id.clone(), profile_log.exp());
        }
    }

    let l = included.len();
    if l == 0 {
        return Err(IndicatorError::EmptyRecord(subject_id.to_string()));
    }

    let mut warnings = Vec::new();
    if !missing.is_empty() {
        warnings.push(format!(
            "{subject_id}: no ratio for {}; composed over {l} ratio(s)",
            missing.join(", ")
        ));
    }
    for p in profiles {
        if !profile_products.contains_key(&p.id) {
            warnings.push(format!("{subject_id}: profile `{}` is empty", p.id));
        }
    }

    Ok(CompositeResult {
        subject_id: subject_id.to_string(),
        profile_products,
        ratio_count: l,
        cmi: (total_log / l as f64).exp(),
        included_indicators: included,
        warnings,
    })
}

/// Composes every subject in the table, in lexicographic subject order.
pub fn compose_all(
    table: &RatioTable,
    profiles: &[ProfileSpec],
) -> Result<Vec<CompositeResult>, IndicatorError> {
    table
        .subjects()
        .into_iter()
        .map(|s| compose_cmi(table, s, profiles))
        .collect()
}
