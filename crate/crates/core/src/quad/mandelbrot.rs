//! Escape-time membership for the Mandelbrot set and the closed-form tests
//! for its two largest hyperbolic components.

use crate::par::map_range;
use num_complex::Complex64;

type C64 = Complex64;

/// Outcome of iterating the critical orbit of `z^2 + c`.
///
/// `escaped == false` only means the orbit stayed bounded for `max_iter`
/// steps; it is never a proof of membership.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MandelbrotVerdict {
    pub c: C64,
    pub escaped: bool,
    pub escape_step: Option<usize>,
    pub max_iter: usize,
}

/// Escape radius for `z^2 + c`: once `|z| > max(2, |c|)` the orbit escapes.
#[inline]
pub fn escape_radius(c: C64) -> f64 {
    c.norm().max(2.0)
}

/// Step `k >= 1` at which `|f_c^k(z0)|` first exceeds the escape radius.
#[inline]
pub fn escape_time(c: C64, z0: C64, max_iter: usize) -> Option<usize> {
    let r2 = escape_radius(c).powi(2);
    let mut z = z0;
    if z.norm_sqr() > r2 {
        return Some(0);
    }
    for k in 1..=max_iter {
        z = z * z + c;
        if z.norm_sqr() > r2 {
            return Some(k);
        }
    }
    None
}

pub fn mandelbrot_escape(c: C64, max_iter: usize) -> MandelbrotVerdict {
    let step = escape_time(c, C64::new(0.0, 0.0), max_iter);
    MandelbrotVerdict {
        c,
        escaped: step.is_some(),
        escape_step: step,
        max_iter,
    }
}

/// `Some(1)` inside the main cardioid, `Some(2)` inside the period-2 disk.
pub fn cardioid_or_disk(c: C64) -> Option<u32> {
    let one = C64::new(1.0, 0.0);
    if (one - (one - 4.0 * c).sqrt()).norm() < 1.0 {
        Some(1)
    } else if (c + one).norm() < 0.25 {
        Some(2)
    } else {
        None
    }
}

/// Real grid `c_lo + k * step` (`k = 0..`, up to `c_hi` inclusive).
pub fn real_grid(c_lo: f64, c_hi: f64, step: f64) -> Vec<f64> {
    let n = ((c_hi - c_lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|k| c_lo + k as f64 * step).collect()
}

/// Bounded-within-budget verdict at every real grid point.
pub fn real_slice_scan(c_lo: f64, c_hi: f64, step: f64, max_iter: usize) -> Vec<(f64, bool)> {
    let grid = real_grid(c_lo, c_hi, step);
    map_range(grid.len(), |k| {
        let c = grid[k];
        (c, !mandelbrot_escape(C64::new(c, 0.0), max_iter).escaped)
    })
}
