use super::IngestError;
use crate::indicator::SubjectRecord;

/// Unions records subject by subject. The same indicator may appear on both
/// sides only with an identical value; any other overlap is a conflict.
///
/// Subjects keep first-seen order: `a` first, then new subjects from `b`.
pub fn merge_records(
    a: &[SubjectRecord],
    b: &[SubjectRecord],
) -> Result<Vec<SubjectRecord>, IngestError> {
    let mut out: Vec<SubjectRecord> = Vec::with_capacity(a.len() + b.len());
    for record in a.iter().chain(b) {
        let target = match out
            .iter_mut()
            .position(|r| r.subject_id == record.subject_id)
        {
            Some(i) => &mut out[i],
            None => {
                out.push(SubjectRecord::new(&record.subject_id));
                out.last_mut().expect("just pushed")
            }
        };
        for (iid, m) in &record.measurements {
            match target.measurements.get(iid) {
                Some(existing) if existing.value == m.value => {}
                Some(existing) => {
                    return Err(IngestError::ConflictingMeasurement {
                        subject: record.subject_id.clone(),
                        indicator: iid.clone(),
                        value_a: existing.value,
                        value_b: m.value,
                    })
                }
                None => {
                    target.measurements.insert(iid.clone(), m.clone());
                }
            }
        }
    }
    Ok(out)
}
