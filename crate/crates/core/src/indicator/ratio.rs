use std::collections::{BTreeMap, BTreeSet};

use super::{check_positive, Directionality, IndicatorError, IndicatorSpec, SubjectRecord};

/// Orients one measurement against the reference so that a ratio above 1.0
/// always means "better than the reference".
pub fn normalize_ratio(
    value: f64,
    reference: f64,
    directionality: Directionality,
) -> Result<f64, IndicatorError> {
    check_positive(value, "value")?;
    check_positive(reference, "reference")?;
    let r = match directionality {
        Directionality::HigherIsBetter => value / reference,
        Directionality::LowerIsBetter => reference / value,
    };
    // quotients of extreme finite values can still over/underflow
    check_positive(r, "ratio")?;
    Ok(r)
}

/// Dimensionless ratios for every (subject, indicator) pair that was measured.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RatioTable {
    pub reference_id: String,
    pub entries: BTreeMap<(String, String), f64>,
}

impl RatioTable {
    pub fn new(reference_id: impl Into<String>) -> Self {
        RatioTable {
            reference_id: reference_id.into(),
            entries: BTreeMap::new(),
        }
    }

    pub fn get(&self, subject_id: &str, indicator_id: &str) -> Option<f64> {
        self.entries
            .get(&(subject_id.to_string(), indicator_id.to_string()))
            .copied()
    }

    pub fn insert(
        &mut self,
        subject_id: impl Into<String>,
        indicator_id: impl Into<String>,
        ratio: f64,
    ) -> Result<(), IndicatorError> {
        let key = (subject_id.into(), indicator_id.into());
        check_positive(ratio, &format!("ratio {}/{}", key.0, key.1))?;
        self.entries.insert(key, ratio);
        Ok(())
    }

    /// Distinct subject ids in lexicographic order.
    pub fn subjects(&self) -> Vec<&str> {
        let set: BTreeSet<&str> = self.entries.keys().map(|(s, _)| s.as_str()).collect();
        set.into_iter().collect()
    }

    /// `(indicator_id, ratio)` pairs for one subject.
    pub fn ratios_for<'a>(&'a self, subject_id: &'a str) -> impl Iterator<Item = (&'a str, f64)> {
        self.entries
            .iter()
            .filter(move |((s, _), _)| s == subject_id)
            .map(|((_, i), r)| (i.as_str(), *r))
    }
}

/// Normalizes every subject against `reference_id`.
///
/// Indicators a subject did not measure simply produce no entry. Every
/// indicator a subject did measure must also be measured by the reference.
pub fn build_ratio_table(
    subjects: &[SubjectRecord],
    reference_id: &str,
    catalog: &[IndicatorSpec],
) -> Result<RatioTable, IndicatorError> {
    let mut seen = BTreeSet::new();
    for s in subjects {
        if !seen.insert(s.subject_id.as_str()) {
            return Err(IndicatorError::DuplicateSubject(s.subject_id.clone()));
        }
    }
    let reference = subjects
        .iter()
        .find(|s| s.subject_id == reference_id)
        .ok_or_else(|| IndicatorError::UnknownReference(reference_id.to_string()))?;

    let mut table = RatioTable::new(reference_id);
    for subject in subjects {
        for (iid, m) in &subject.measurements {
            let spec = catalog
                .iter()
                .find(|c| &c.id == iid)
                .ok_or_else(|| IndicatorError::UnknownIndicator(iid.clone()))?;
            let ref_value = reference
                .value(iid)
                .ok_or_else(|| IndicatorError::MissingReferenceMeasurement(iid.clone()))?;
            let ratio = normalize_ratio(m.value, ref_value, spec.directionality)?;
            table
                .entries
                .insert((subject.subject_id.clone(), iid.clone()), ratio);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indicator::{default_li_catalog, Measurement, Source};
    use Directionality::*;

    fn rec(id: &str, ms: &[(&str, f64)]) -> SubjectRecord {
        let mut r = SubjectRecord::new(id);
        for (iid, v) in ms {
            r.insert(Measurement::new(*iid, *v, Source::Fixture, "").unwrap())
                .unwrap();
        }
        r
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_ratio(4.0, 4.0, LowerIsBetter), Ok(1.0));
        assert_eq!(normalize_ratio(2.0, 4.0, LowerIsBetter), Ok(2.0));
        assert_eq!(normalize_ratio(200.0, 100.0, HigherIsBetter), Ok(2.0));
        assert!(matches!(
            normalize_ratio(0.0, 1.0, LowerIsBetter),
            Err(IndicatorError::NonPositiveMeasurement { .. })
        ));
        assert!(normalize_ratio(1.0, f64::NAN, HigherIsBetter).is_err());
        assert!(normalize_ratio(f64::INFINITY, 1.0, HigherIsBetter).is_err());
        assert!(normalize_ratio(1.0, -3.0, HigherIsBetter).is_err());
        assert!(normalize_ratio(f64::MAX, f64::MIN_POSITIVE, HigherIsBetter).is_err());
    }

    #[test]
    fn self_normalization_is_exact() {
        let cat = default_li_catalog();
        let aes = rec(
            "aes128",
            &[("sw.et", 0.37), ("sw.th", 1.3e9), ("hw.pc", 0.123)],
        );
        let t = build_ratio_table(&[aes], "aes128", cat.indicators()).unwrap();
        assert_eq!(t.entries.len(), 3);
        assert!(t.entries.values().all(|&r| r == 1.0));
        assert_eq!(t.reference_id, "aes128");
    }

    #[test]
    fn single_ratio() {
        let cat = default_li_catalog();
        let t = build_ratio_table(
            &[
                rec("aes128", &[("sw.et", 4.0)]),
                rec("x", &[("sw.et", 2.0)]),
            ],
            "aes128",
            cat.indicators(),
        )
        .unwrap();
        assert_eq!(t.get("x", "sw.et"), Some(2.0));
        assert_eq!(t.get("x", "sw.th"), None);
    }

    #[test]
    fn error_paths() {
        let cat = default_li_catalog();
        let ind = cat.indicators();
        assert_eq!(
            build_ratio_table(
                &[
                    rec("aes128", &[("sw.et", 1.0)]),
                    rec("x", &[("hw.pc", 1.0)])
                ],
                "aes128",
                ind
            ),
            Err(IndicatorError::MissingReferenceMeasurement("hw.pc".into()))
        );
        assert_eq!(
            build_ratio_table(&[rec("x", &[("sw.et", 1.0)])], "aes128", ind),
            Err(IndicatorError::UnknownReference("aes128".into()))
        );
        assert_eq!(
            build_ratio_table(&[rec("x", &[("sw.xx", 1.0)])], "x", ind),
            Err(IndicatorError::UnknownIndicator("sw.xx".into()))
        );
        assert_eq!(
            build_ratio_table(&[rec("x", &[]), rec("x", &[])], "x", ind),
            Err(IndicatorError::DuplicateSubject("x".into()))
        );
    }
}
