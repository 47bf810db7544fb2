use std::collections::BTreeMap;

use super::IngestError;
use crate::indicator::{Measurement, Source};

const KEYS: [&str; 8] = [
    "subject_id",
    "fmax_mhz",
    "cycles_per_block",
    "block_bits",
    "lut_count",
    "lr_count",
    "power_mw",
    "pd_ns",
];

/// Figures a synthesis and timing flow reports for one design.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisSummary {
    pub subject_id: String,
    pub fmax_mhz: f64,
    pub cycles_per_block: u64,
    pub block_bits: u64,
    pub lut_count: u64,
    pub lr_count: u64,
    pub power_mw: f64,
    pub pd_ns: f64,
}

/// Parses `key: value` lines. `#` starts a comment line. Unknown keys are
/// skipped with a warning.
pub fn parse_synthesis_summary(
    text: &str,
    warnings: &mut Vec<String>,
) -> Result<SynthesisSummary, IngestError> {
    let mut fields: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(IngestError::schema(
                format!("line {line_no}"),
                "expected `key: value`",
            ));
        };
        let (key, value) = (key.trim(), value.trim());
        if !KEYS.contains(&key) {
            warnings.push(format!("line {line_no}: ignoring unknown key `{key}`"));
            continue;
        }
        if fields.insert(key, (line_no, value)).is_some() {
            return Err(IngestError::schema(
                key,
                format!("duplicate key on line {line_no}"),
            ));
        }
    }

    let get = |key: &str| -> Result<(usize, &str), IngestError> {
        fields
            .get(key)
            .copied()
            .ok_or_else(|| IngestError::schema(key, "missing required key"))
    };
    let real = |key: &str| -> Result<f64, IngestError> {
        let (line, v) = get(key)?;
        match v.parse::<f64>() {
            Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
            _ => Err(IngestError::schema(
                key,
                format!("line {line}: expected a positive number, got `{v}`"),
            )),
        }
    };
    let int = |key: &str| -> Result<u64, IngestError> {
        let (line, v) = get(key)?;
        match v.parse::<u64>() {
            Ok(x) if x > 0 => Ok(x),
            _ => Err(IngestError::schema(
                key,
                format!("line {line}: expected a positive integer, got `{v}`"),
            )),
        }
    };

    let (line, subject_id) = get("subject_id")?;
    if subject_id.is_empty() {
        return Err(IngestError::schema(
            "subject_id",
            format!("line {line}: empty value"),
        ));
    }
    Ok(SynthesisSummary {
        subject_id: subject_id.to_string(),
        fmax_mhz: real("fmax_mhz")?,
        cycles_per_block: int("cycles_per_block")?,
        block_bits: int("block_bits")?,
        lut_count: int("lut_count")?,
        lr_count: int("lr_count")?,
        power_mw: real("power_mw")?,
        pd_ns: real("pd_ns")?,
    })
}

pub fn emit_synthesis_summary(s: &SynthesisSummary) -> String {
    format!(
        "subject_id: {}\nfmax_mhz: {}\ncycles_per_block: {}\nblock_bits: {}\nlut_count: {}\nlr_count: {}\npower_mw: {}\npd_ns: {}\n",
        s.subject_id,
        s.fmax_mhz,
        s.cycles_per_block,
        s.block_bits,
        s.lut_count,
        s.lr_count,
        s.power_mw,
        s.pd_ns
    )
}

/// Hardware-profile measurements from a synthesis summary.
///
/// `hw.et` is the latency of one block at fmax and `hw.th` the matching
/// bit rate, so `hw.et * hw.th == block_bits`. Power is converted from mW to W.
pub fn synthesis_to_measurements(
    s: &SynthesisSummary,
    detail: &str,
) -> Result<Vec<Measurement>, IngestError> {
    let hz = s.fmax_mhz * 1e6;
    let cycles = s.cycles_per_block as f64;
    let m = |id: &str, v: f64| Measurement::new(id, v, Source::Ingested, detail);
    Ok(vec![
        m("hw.et", cycles / hz)?,
        m("hw.th", s.block_bits as f64 * hz / cycles)?,
        m("hw.pd", s.pd_ns)?,
        m("hw.lut", s.lut_count as f64)?,
        m("hw.lr", s.lr_count as f64)?,
        m("hw.pc", s.power_mw / 1000.0)?,
    ])
}
