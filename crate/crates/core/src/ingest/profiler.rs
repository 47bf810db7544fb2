use super::{is_subject_id, IngestError, IngestOptions};
use crate::indicator::{clamp_floor, IndicatorError, Measurement, Source, SubjectRecord};

pub const PROFILER_HEADER: [&str; 6] = [
    "subject",
    "et_s",
    "instructions",
    "cycles",
    "cache_accesses",
    "cache_misses",
];

/// One row of a profiler export.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfilerExport {
    pub subject_id: String,
    pub et_s: f64,
    pub instructions: u64,
    pub cycles: u64,
    pub cache_accesses: u64,
    pub cache_misses: u64,
}

/// Parses a profiler CSV. Cells are whitespace-trimmed, blank lines skipped,
/// and the header must match [`PROFILER_HEADER`] exactly.
pub fn parse_profiler_csv(text: &str) -> Result<Vec<ProfilerExport>, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut header_seen = false;
    let mut out = Vec::new();
    for result in reader.records() {
        let record = result.map_err(|e| {
            let row = e.position().map_or(0, |p| p.line());
            IngestError::schema(format!("row {row}"), e.to_string())
        })?;
        let row = record.position().map_or(0, |p| p.line());
        let at = || format!("row {row}");
        if record.iter().all(str::is_empty) {
            continue;
        }
        if !header_seen {
            if record.iter().ne(PROFILER_HEADER) {
                return Err(IngestError::schema(
                    at(),
                    format!("expected header `{}`", PROFILER_HEADER.join(",")),
                ));
            }
            header_seen = true;
            continue;
        }
        if record.len() != PROFILER_HEADER.len() {
            return Err(IngestError::schema(
                at(),
                format!(
                    "expected {} columns, got {}",
                    PROFILER_HEADER.len(),
                    record.len()
                ),
            ));
        }

        let subject_id = record[0].to_string();
        if !is_subject_id(&subject_id) {
            return Err(IngestError::schema(
                at(),
                format!("invalid subject id `{subject_id}`"),
            ));
        }
        let et_s: f64 = record[1].parse().map_err(|_| {
            IngestError::schema(at(), format!("et_s: not a number: `{}`", &record[1]))
        })?;
        if !(et_s > 0.0 && et_s.is_finite()) {
            return Err(IngestError::schema(
                at(),
                format!("et_s must be positive, got {et_s}"),
            ));
        }
        let int = |col: usize, allow_zero: bool| -> Result<u64, IngestError> {
            let v: u64 = record[col].parse().map_err(|_| {
                IngestError::schema(
                    at(),
                    format!(
                        "{}: not a non-negative integer: `{}`",
                        PROFILER_HEADER[col], &record[col]
                    ),
                )
            })?;
            if v == 0 && !allow_zero {
                return Err(IngestError::schema(
                    at(),
                    format!("{} must be positive", PROFILER_HEADER[col]),
                ));
            }
            Ok(v)
        };
        let export = ProfilerExport {
            subject_id,
            et_s,
            instructions: int(2, false)?,
            cycles: int(3, false)?,
            cache_accesses: int(4, false)?,
            cache_misses: int(5, true)?,
        };
        if export.cache_misses > export.cache_accesses {
            return Err(IngestError::schema(
                at(),
                "cache_misses exceeds cache_accesses",
            ));
        }
        out.push(export);
    }
    if !header_seen {
        return Err(IngestError::schema("row 1", "missing header"));
    }
    Ok(out)
}

pub fn emit_profiler_csv(exports: &[ProfilerExport]) -> String {
    let mut out = PROFILER_HEADER.join(",");
    out.push('\n');
    for e in exports {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            e.subject_id, e.et_s, e.instructions, e.cycles, e.cache_accesses, e.cache_misses
        ));
    }
    out
}

/// Derives `sw.et`, `sw.cpi` and `sw.cmr` from one export.
///
/// A zero miss count makes the cache miss ratio degenerate; it is an error
/// unless a clamp floor is configured.
pub fn profiler_to_measurements(
    p: &ProfilerExport,
    opts: &IngestOptions,
    detail: &str,
    warnings: &mut Vec<String>,
) -> Result<Vec<Measurement>, IngestError> {
    let degenerate = |what: &str| IndicatorError::NonPositiveMeasurement {
        value: 0.0,
        context: format!("{}: {what} is zero", p.subject_id),
    };
    if p.instructions == 0 {
        return Err(degenerate("instructions").into());
    }
    if p.cache_accesses == 0 {
        return Err(degenerate("cache_accesses").into());
    }
    let cpi = p.cycles as f64 / p.instructions as f64;
    let cmr = p.cache_misses as f64 / p.cache_accesses as f64;
    let cmr = clamp_floor(
        cmr,
        opts.clamp_epsilon,
        &format!("{}/sw.cmr", p.subject_id),
        warnings,
    )?;
    Ok(vec![
        Measurement::new("sw.et", p.et_s, Source::Ingested, detail)?,
        Measurement::new("sw.cpi", cpi, Source::Ingested, detail)?,
        Measurement::new("sw.cmr", cmr, Source::Ingested, detail)?,
    ])
}

/// Converts a whole export into subject records, one per row. Repeated
/// subjects in the same export are rejected.
pub fn profiler_records(
    exports: &[ProfilerExport],
    opts: &IngestOptions,
    detail: &str,
    warnings: &mut Vec<String>,
) -> Result<Vec<SubjectRecord>, IngestError> {
    let mut records: Vec<SubjectRecord> = Vec::new();
    for p in exports {
        if records.iter().any(|r| r.subject_id == p.subject_id) {
            return Err(IndicatorError::DuplicateSubject(p.subject_id.clone()).into());
        }
        let mut r = SubjectRecord::new(&p.subject_id);
        for m in profiler_to_measurements(p, opts, detail, warnings)? {
            r.insert(m)?;
        }
        records.push(r);
    }
    Ok(records)
}
