use std::f64::consts::PI;
use std::fmt::Write;

use super::ReportError;
use crate::fmt::two_decimals;
use crate::indicator::{rank, CompositeResult, RatioTable};

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 600.0;

pub const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948", "#b07aa1", "#ff9da7",
];

// bar chart plot area
const LEFT: f64 = 80.0;
const RIGHT: f64 = 40.0;
const TOP: f64 = 60.0;
const BOTTOM: f64 = 100.0;

// radar geometry
const CX: f64 = 400.0;
const CY: f64 = 320.0;
const RADIUS: f64 = 220.0;

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

fn c(x: f64) -> String {
    // avoid "-0.00"
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

fn open(out: &mut String, title: &str) {
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\" font-family=\"sans-serif\">",
        w = WIDTH,
        h = HEIGHT
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"32\" text-anchor=\"middle\" font-size=\"20\">{}</text>",
        c(WIDTH / 2.0),
        escape(title)
    );
}

/// Bar chart of composite scores, one bar per subject in rank order. The value
/// axis runs from 0 to the largest score plus 10%.
pub fn emit_bar_chart_svg(results: &[CompositeResult]) -> Result<String, ReportError> {
    let ranking = rank(results)?;
    let max = ranking.iter().map(|r| r.cmi).fold(0.0, f64::max);
    let axis_max = if max > 0.0 { max * 1.1 } else { 1.0 };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let base = TOP + plot_h;

    let mut out = String::new();
    open(&mut out, "Composite measurement indicator");

    let _ = writeln!(
        out,
        "<line class=\"axis\" x1=\"{l}\" y1=\"{t}\" x2=\"{l}\" y2=\"{b}\" stroke=\"#333\"/>",
        l = c(LEFT),
        t = c(TOP),
        b = c(base)
    );
    let _ = writeln!(
        out,
        "<line class=\"axis\" x1=\"{l}\" y1=\"{b}\" x2=\"{r}\" y2=\"{b}\" stroke=\"#333\"/>",
        l = c(LEFT),
        r = c(LEFT + plot_w),
        b = c(base)
    );
    for i in 0..=5 {
        let v = axis_max * i as f64 / 5.0;
        let y = base - plot_h * i as f64 / 5.0;
        let _ = writeln!(
            out,
            "<line class=\"tick\" x1=\"{}\" y1=\"{y}\" x2=\"{}\" y2=\"{y}\" stroke=\"#333\"/>",
            c(LEFT - 5.0),
            c(LEFT),
            y = c(y)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-size=\"12\">{}</text>",
            c(LEFT - 8.0),
            c(y + 4.0),
            two_decimals(v)
        );
    }

    let n = ranking.len().max(1) as f64;
    let slot = plot_w / n;
    let bar_w = slot * 0.6;
    for (i, row) in ranking.iter().enumerate() {
        let h = row.cmi / axis_max * plot_h;
        let x = LEFT + slot * i as f64 + (slot - bar_w) / 2.0;
        let mid = x + bar_w / 2.0;
        let _ = writeln!(
            out,
            "<rect class=\"bar\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"><title>{}: {}</title></rect>",
            c(x),
            c(base - h),
            c(bar_w),
            c(h),
            PALETTE[i % PALETTE.len()],
            escape(&row.subject_id),
            two_decimals(row.cmi)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{}</text>",
            c(mid),
            c(base - h - 6.0),
            two_decimals(row.cmi)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"13\">{}</text>",
            c(mid),
            c(base + 20.0),
            escape(&row.subject_id)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Radar chart of per-indicator ratios. Axes are evenly spaced clockwise from
/// 12 o'clock in `indicator_ids` order; each subject is a closed polygon
/// colored by its position in `subjects`.
pub fn emit_radar_chart_svg(
    table: &RatioTable,
    subjects: &[String],
    indicator_ids: &[String],
) -> Result<String, ReportError> {
    let mut values = Vec::with_capacity(subjects.len());
    for s in subjects {
        let row = indicator_ids
            .iter()
            .map(|i| {
                table.get(s, i).ok_or_else(|| ReportError::MissingRatio {
                    subject: s.clone(),
                    indicator: i.clone(),
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        values.push(row);
    }
    let max = values.iter().flatten().copied().fold(0.0, f64::max);
    let axis_max = if max > 0.0 { max * 1.1 } else { 1.0 };

    let n = indicator_ids.len();
    let angle = |i: usize| -PI / 2.0 + 2.0 * PI * i as f64 / n as f64;
    let point = |i: usize, r: f64| (CX + r * angle(i).cos(), CY + r * angle(i).sin());

    let mut out = String::new();
    open(&mut out, "Composite measurement indicator: ratios");

    for k in 1..=4 {
        let r = RADIUS * k as f64 / 4.0;
        let _ = writeln!(
            out,
            "<circle class=\"grid\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"none\" stroke=\"#ccc\"/>",
            c(CX),
            c(CY),
            c(r)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-size=\"10\" fill=\"#666\">{}</text>",
            c(CX + 3.0),
            c(CY - r - 2.0),
            two_decimals(axis_max * k as f64 / 4.0)
        );
    }
    for (i, iid) in indicator_ids.iter().enumerate() {
        let (x, y) = point(i, RADIUS);
        let (lx, ly) = point(i, RADIUS + 22.0);
        let _ = writeln!(
            out,
            "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999\"/>",
            c(CX),
            c(CY),
            c(x),
            c(y)
        );
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-size=\"12\">{}</text>",
            c(lx),
            c(ly + 4.0),
            escape(iid)
        );
    }
    for (si, (s, row)) in subjects.iter().zip(&values).enumerate() {
        let color = PALETTE[si % PALETTE.len()];
        if n > 0 {
            let points: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let (x, y) = point(i, v / axis_max * RADIUS);
                    format!("{},{}", c(x), c(y))
                })
                .collect();
            let _ = writeln!(
                out,
                "<polygon class=\"series\" data-subject=\"{}\" points=\"{}\" fill=\"{color}\" fill-opacity=\"0.15\" stroke=\"{color}\" stroke-width=\"2\"/>",
                escape(s),
                points.join(" ")
            );
        }
        let ly = 70.0 + 18.0 * si as f64;
        let _ = writeln!(
            out,
            "<rect class=\"legend\" x=\"640\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{color}\"/>",
            c(ly - 10.0)
        );
        let _ = writeln!(
            out,
            "<text x=\"658\" y=\"{}\" font-size=\"12\">{}</text>",
            c(ly),
            escape(s)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
