//! Windows of the real parameter line on which `z^2 + c` is certified
//! hyperbolic with an attracting cycle of constant period.

use super::mandelbrot::real_grid;
use super::bifurcation::MIN_RUN;
use crate::hyperbolic::{hyperbolicity_certificate, Status};
use crate::par::map_range;
use crate::rational::RationalMap;
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowRecord {
    pub c_lo: f64,
    pub c_hi: f64,
    pub period: usize,
}

/// Period of the finite attracting cycle when the certificate is
/// `Hyperbolic` with exactly one, else `None`.
pub fn certified_period(c: f64, budget: usize) -> Option<usize> {
    let f = RationalMap::quadratic(Complex64::new(c, 0.0));
    let cert = hyperbolicity_certificate(&f, budget).ok()?;
    if cert.status != Status::Hyperbolic || cert.attractors.len() != 1 {
        return None;
    }
    Some(cert.attractors[0].period)
}

/// Certified period at each grid point, in grid order.
pub fn period_profile(c_lo: f64, c_hi: f64, step: f64, budget: usize) -> Vec<(f64, Option<usize>)> {
    let grid = real_grid(c_lo, c_hi, step);
    map_range(grid.len(), |k| (grid[k], certified_period(grid[k], budget)))
}

/// Maximal runs of at least [`MIN_RUN`] grid points sharing a period.
pub fn window_scan(c_lo: f64, c_hi: f64, step: f64, budget: usize) -> Vec<WindowRecord> {
    merge_windows(&period_profile(c_lo, c_hi, step, budget))
}

pub fn merge_windows(profile: &[(f64, Option<usize>)]) -> Vec<WindowRecord> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < profile.len() {
        let Some(p) = profile[i].1 else {
            i += 1;
            continue;
        };
        let mut j = i;
        while j + 1 < profile.len() && profile[j + 1].1 == Some(p) {
            j += 1;
        }
        if j + 1 - i >= MIN_RUN {
            out.push(WindowRecord {
                c_lo: profile[i].0,
                c_hi: profile[j].0,
                period: p,
            });
        }
        i = j + 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_runs_are_dropped() {
        let prof = vec![
            (0.0, Some(1)),
            (0.1, Some(1)),
            (0.2, None),
            (0.3, Some(2)),
            (0.4, Some(2)),
            (0.5, Some(2)),
        ];
        assert_eq!(
            merge_windows(&prof),
            vec![WindowRecord { c_lo: 0.3, c_hi: 0.5, period: 2 }]
        );
    }

    #[test]
    fn cardioid_slice() {
        let w = window_scan(-0.8, 0.2, 1e-2, 100_000);
        let ones: Vec<_> = w.iter().filter(|w| w.period == 1).collect();
        assert_eq!(ones.len(), 1);
        assert!(ones[0].c_lo < -0.7 && ones[0].c_hi > 0.19);
    }
}
