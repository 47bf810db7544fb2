use super::ReportBundle;
use crate::fmt::{four_sig, two_decimals};

fn field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Ranking table: `rank,subject,cmi,<indicator ratios...>`.
///
/// The CMI is printed with two decimals (half-even) and ratios with four
/// significant digits. When adjacent rows print the same CMI but differ at
/// full precision, a trailing `#` comment records that the order comes from
/// the unrounded values.
pub fn emit_ranking_csv(bundle: &ReportBundle) -> String {
    let cols = bundle.indicator_columns();
    let mut out = String::from("rank,subject,cmi");
    for c in &cols {
        out.push(',');
        out.push_str(&field(c));
    }
    out.push('\n');

    for row in &bundle.ranking {
        out.push_str(&format!(
            "{},{},{}",
            row.rank,
            field(&row.subject_id),
            two_decimals(row.cmi)
        ));
        for c in &cols {
            out.push(',');
            if let Some(r) = bundle.ratio_table.get(&row.subject_id, c) {
                out.push_str(&four_sig(r));
            }
        }
        out.push('\n');
    }

    for (i, pair) in bundle.ranking.windows(2).enumerate() {
        let (a, b) = (&pair[0], &pair[1]);
        if a.cmi != b.cmi && two_decimals(a.cmi) == two_decimals(b.cmi) {
            out.push_str(&format!(
                "# rows {} and {} both print cmi {}; order follows full precision ({} > {})\n",
                i + 1,
                i + 2,
                two_decimals(a.cmi),
                a.cmi,
                b.cmi
            ));
        }
    }
    out
}
