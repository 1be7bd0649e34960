//! Numerical tolerances shared across the crate.

/// Algebraic identities between closed forms (traces, determinants, root sums).
pub const ALGEBRAIC: f64 = 1e-12;

/// Point-on-circle and point-on-line incidence.
pub const INCIDENCE: f64 = 1e-9;

/// Margin a strict inequality `x > 0` must clear before it counts.
///
/// Boundary points of an open condition evaluate to `0 ± ulp`; requiring a
/// positive margin keeps rounding noise from turning tangencies into certificates.
pub const STRICT: f64 = 1e-12;

/// Slack allowed below zero for closed conditions `x ≥ 0`.
pub const CLOSED: f64 = 1e-12;

/// Coincidence tolerance when deduplicating lines.
pub const LINE_DEDUP: f64 = 1e-12;

#[inline]
pub fn strictly_positive(slack: f64) -> bool {
    slack > STRICT
}

#[inline]
pub fn non_negative(slack: f64) -> bool {
    slack >= -CLOSED
}
