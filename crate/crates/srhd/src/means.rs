//! Jumps, arithmetic means and logarithmic means of interface pairs.

use crate::error::{Error, Result};

/// Threshold on `f² = ((a_R − a_L)/(a_R + a_L))²` below which the series
/// form of the logarithmic mean is used.
pub const LOGMEAN_SERIES_THRESHOLD: f64 = 1e-4;

/// `a_R − a_L`.
#[inline]
pub fn jump(a_l: f64, a_r: f64) -> f64 {
    a_r - a_l
}

/// `(a_L + a_R)/2`.
#[inline]
pub fn amean(a_l: f64, a_r: f64) -> f64 {
    0.5 * (a_l + a_r)
}

/// Logarithmic mean `(a_R − a_L)/(ln a_R − ln a_L)` of two positive numbers.
///
/// Near-equal arguments switch to the truncated series
/// `(a_L + a_R) / (2(1 + f²/3 + f⁴/5 + f⁶/7))`. The arguments are ordered
/// internally, so the result is symmetric bit for bit.
#[inline]
pub fn logmean(a_l: f64, a_r: f64) -> f64 {
    let (lo, hi) = if a_l <= a_r { (a_l, a_r) } else { (a_r, a_l) };
    let sum = hi + lo;
    let f = (hi - lo) / sum;
    let f2 = f * f;
    if f2 < LOGMEAN_SERIES_THRESHOLD {
        0.5 * sum / (1.0 + f2 * (1.0 / 3.0 + f2 * (0.2 + f2 / 7.0)))
    } else {
        (hi - lo) / ((hi - lo) / lo).ln_1p()
    }
}

/// Direct formula for the logarithmic mean without the series branch.
///
/// Loses accuracy as the arguments approach each other; exposed for
/// continuity checks only.
pub fn logmean_direct(a_l: f64, a_r: f64) -> f64 {
    let (lo, hi) = if a_l <= a_r { (a_l, a_r) } else { (a_r, a_l) };
    (hi - lo) / ((hi - lo) / lo).ln_1p()
}

/// Checked logarithmic mean rejecting nonpositive or non-finite arguments.
pub fn try_logmean(a_l: f64, a_r: f64) -> Result<f64> {
    if !(a_l > 0.0 && a_r > 0.0 && a_l.is_finite() && a_r.is_finite()) {
        return Err(Error::Domain(format!("logarithmic mean needs positive finite arguments, got ({a_l}, {a_r})")));
    }
    Ok(logmean(a_l, a_r))
}
