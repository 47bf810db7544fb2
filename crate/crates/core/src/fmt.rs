//! Number formatting for human-facing output.
//!
//! Rust's float formatting works on the exact binary value and rounds exact
//! ties to even, so `{:.N}` is already round-half-even.

/// Two decimals, half-to-even (`3.38`, `0.12` for 0.125).
pub fn two_decimals(x: f64) -> String {
    format!("{x:.2}")
}

/// Four significant digits. Plain notation for magnitudes in `[1e-4, 1e4)`,
/// scientific otherwise.
pub fn four_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.3e}");
    let exp: i32 = sci
        .split_once('e')
        .and_then(|(_, e)| e.parse().ok())
        .unwrap_or(0);
    if (-4..4).contains(&exp) {
        let decimals = (3 - exp) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}
