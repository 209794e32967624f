//! The real period-doubling cascade of superstable parameters.
//!
//! `s_k` is the parameter at which the critical point has period
//! `2^(k-1)`: `s_1 = 0`, `s_2 = -1`, `s_3 ≈ -1.3107`, ... accumulating at
//! the Feigenbaum parameter.

use crate::error::{DynError, Result};
use crate::par::map_range;

pub const MAX_LEVEL: usize = 12;
/// Outer bracket for `s_k` is `(s_{k-1} - BRACKET_FACTOR * gap, s_{k-1})`.
pub const BRACKET_FACTOR: f64 = 1.2;
/// Sign-scan resolution inside the bracket.
const SCAN_POINTS: usize = 2000;

#[derive(Clone, Debug, PartialEq)]
pub struct CascadeResult {
    /// `s_1, s_2, ...`
    pub superstable_params: Vec<f64>,
    /// `delta_k = (s_{k-1} - s_{k-2}) / (s_k - s_{k-1})` for `k >= 3`,
    /// stored as `(k, delta_k)`.
    pub delta_estimates: Vec<(usize, f64)>,
    /// Aitken extrapolation from the last three parameters.
    pub accumulation: f64,
    /// Level at which bracketing failed, if any.
    pub failed_at: Option<usize>,
}

/// `f_c^n(0)` for real `c`.
pub fn critical_orbit_value(c: f64, n: usize) -> f64 {
    let mut x = 0.0;
    for _ in 0..n {
        x = x * x + c;
    }
    x
}

/// Bisects a sign change of `f` on `[lo, hi]` down to adjacent doubles.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    if f(lo).abs() <= f(hi).abs() {
        lo
    } else {
        hi
    }
}

/// Next superstable parameter below `prev`, given the previous gap.
fn next_param(prev: f64, gap: f64, period: usize) -> Option<f64> {
    let f = |c: f64| critical_orbit_value(c, period);
    let width = BRACKET_FACTOR * gap;
    let h = width / SCAN_POINTS as f64;
    // skip the root at prev itself (period 2^(k-2) divides 2^(k-1))
    let values = map_range(SCAN_POINTS, |i| {
        let c = prev - (i as f64 + 0.5) * h;
        (c, f(c))
    });
    for w in values.windows(2) {
        let ((c_hi, f_hi), (c_lo, f_lo)) = (w[0], w[1]);
        if f_hi == 0.0 {
            return Some(c_hi);
        }
        if (f_hi > 0.0) != (f_lo > 0.0) {
            return Some(bisect(f, c_lo, c_hi));
        }
    }
    None
}

pub fn superstable_cascade(k_max: usize) -> Result<CascadeResult> {
    if !(3..=MAX_LEVEL).contains(&k_max) {
        return Err(DynError::InvalidArgument(format!(
            "k_max must lie in 3..={MAX_LEVEL}, got {k_max}"
        )));
    }
    let mut s = vec![0.0, -1.0];
    let mut failed_at = None;
    for k in 3..=k_max {
        let prev = s[k - 2];
        let gap = s[k - 3] - prev;
        match next_param(prev, gap, 1 << (k - 1)) {
            Some(c) => s.push(c),
            None => {
                failed_at = Some(k);
                break;
            }
        }
    }
    let delta_estimates = (3..=s.len())
        .map(|k| (k, (s[k - 2] - s[k - 3]) / (s[k - 1] - s[k - 2])))
        .collect();
    let n = s.len();
    let (a, b, c) = (s[n - 3], s[n - 2], s[n - 1]);
    let accumulation = c - (c - b).powi(2) / ((c - b) - (b - a));
    Ok(CascadeResult {
        superstable_params: s,
        delta_estimates,
        accumulation,
        failed_at,
    })
}

impl CascadeResult {
    pub fn delta_at(&self, k: usize) -> Option<f64> {
        self.delta_estimates.iter().find(|d| d.0 == k).map(|d| d.1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_level_by_independent_bisection() {
        // oracle: plain bisection of f^4(0) on (-1.4, -1.25)
        let f = |c: f64| critical_orbit_value(c, 4);
        let (mut lo, mut hi) = (-1.4, -1.25);
        for _ in 0..100 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == (f(lo) > 0.0) {
                lo = mid
            } else {
                hi = mid
            }
        }
        let r = superstable_cascade(4).unwrap();
        assert!((r.superstable_params[2] - lo).abs() < 1e-13);
        assert!((r.superstable_params[2] + 1.310702641336833).abs() < 1e-12);
        assert!((r.superstable_params[3] + 1.3815474844320617).abs() < 1e-12);
    }

    #[test]
    fn residuals_and_order() {
        let r = superstable_cascade(8).unwrap();
        assert_eq!(r.failed_at, None);
        for (k, w) in r.superstable_params.windows(2).enumerate() {
            assert!(w[1] < w[0]);
            let period = 1usize << (k + 1);
            assert!(critical_orbit_value(w[1], period).abs() < 1e-10);
        }
    }

    #[test]
    fn bad_level_rejected() {
        assert!(superstable_cascade(2).is_err());
        assert!(superstable_cascade(13).is_err());
    }
}
