//! Numeric formatting for deterministic text output.

/// Formats with the given number of significant digits in scientific
/// notation; 17 digits round-trip an f64 exactly. NaN prints as "nan".
pub fn sig_digits(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    format!("{:.*e}", digits.max(1) - 1, x)
}

/// Rounds to the given number of significant digits (used for JSON output).
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || digits >= 17 {
        return x;
    }
    sig_digits(x, digits).parse().unwrap_or(x)
}
