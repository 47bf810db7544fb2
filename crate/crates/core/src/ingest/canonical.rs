use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{IngestError, IngestOptions};
use crate::indicator::{clamp_floor, Catalog, IndicatorError, Measurement, Source, SubjectRecord};

const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    schema_version: u32,
    subjects: Vec<SubjectEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SubjectEntry {
    subject_id: String,
    measurements: Vec<MeasurementEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasurementEntry {
    indicator_id: String,
    value: f64,
    unit: String,
    #[serde(default)]
    source: Source,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    detail: String,
}

/// Parses a canonical measurement document against `catalog`.
///
/// Measurements without an explicit `source` are tagged `ingested`.
pub fn parse_canonical(
    text: &str,
    catalog: &Catalog,
    opts: &IngestOptions,
    warnings: &mut Vec<String>,
) -> Result<Vec<SubjectRecord>, IngestError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| {
        IngestError::schema(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    if doc.schema_version != SCHEMA_VERSION {
        return Err(IngestError::schema(
            "schema_version",
            format!("expected {SCHEMA_VERSION}, got {}", doc.schema_version),
        ));
    }

    let mut seen = BTreeSet::new();
    let mut records = Vec::with_capacity(doc.subjects.len());
    for (si, subject) in doc.subjects.into_iter().enumerate() {
        let path = format!("subjects[{si}]");
        if subject.subject_id.is_empty() {
            return Err(IngestError::schema(path, "empty subject_id"));
        }
        if !seen.insert(subject.subject_id.clone()) {
            return Err(IngestError::schema(
                path,
                format!("duplicate subject `{}`", subject.subject_id),
            ));
        }
        let mut record = SubjectRecord::new(subject.subject_id);
        for (mi, m) in subject.measurements.into_iter().enumerate() {
            let path = format!("{path}.measurements[{mi}]");
            let spec = catalog.indicator(&m.indicator_id).ok_or_else(|| {
                IngestError::schema(&path, format!("unknown indicator `{}`", m.indicator_id))
            })?;
            if m.unit != spec.unit {
                return Err(IngestError::UnitMismatch {
                    indicator: m.indicator_id,
                    found: m.unit,
                    expected: spec.unit.clone(),
                });
            }
            let context = format!("{}/{}", record.subject_id, m.indicator_id);
            let value = clamp_floor(m.value, opts.clamp_epsilon, &context, warnings)?;
            let measurement = Measurement::new(m.indicator_id, value, m.source, m.detail)?;
            record.insert(measurement).map_err(|e| match e {
                IndicatorError::DuplicateMeasurement { indicator, .. } => {
                    IngestError::schema(&path, format!("duplicate indicator `{indicator}`"))
                }
                other => other.into(),
            })?;
        }
        records.push(record);
    }
    Ok(records)
}

/// Serializes records as a canonical document, taking units from `catalog`.
pub fn emit_canonical(records: &[SubjectRecord], catalog: &Catalog) -> Result<String, IngestError> {
    let subjects = records
        .iter()
        .map(|r| {
            let measurements = r
                .measurements
                .values()
                .map(|m| {
                    let spec = catalog
                        .indicator(&m.indicator_id)
                        .ok_or_else(|| IndicatorError::UnknownIndicator(m.indicator_id.clone()))?;
                    Ok(MeasurementEntry {
                        indicator_id: m.indicator_id.clone(),
                        value: m.value,
                        unit: spec.unit.clone(),
                        source: m.source,
                        detail: m.detail.clone(),
                    })
                })
                .collect::<Result<Vec<_>, IngestError>>()?;
            Ok(SubjectEntry {
                subject_id: r.subject_id.clone(),
                measurements,
            })
        })
        .collect::<Result<Vec<_>, IngestError>>()?;
    let doc = Document {
        schema_version: SCHEMA_VERSION,
        subjects,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("document serializes");
    out.push('\n');
    Ok(out)
}
