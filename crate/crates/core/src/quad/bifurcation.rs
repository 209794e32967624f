//! Late-orbit samples of the critical orbit (the attractor `A_c`), real
//! bifurcation scans and detection of period changes along them.

use super::mandelbrot::{escape_radius, real_grid};
use crate::par::map_range;
use num_complex::Complex64;

type C64 = Complex64;

/// Samples closer than this join the same cluster.
pub const SAMPLE_CLUSTER_TOL: f64 = 1e-6;
/// A period is only trusted over at least this many consecutive grid points.
pub const MIN_RUN: usize = 3;

#[derive(Clone, Debug, PartialEq)]
pub struct AttractorSample {
    pub c: C64,
    /// `f_c^k(0)` for `k = transient + 1 ..= transient + count`.
    pub points: Vec<C64>,
    pub transient: usize,
    pub count: usize,
    /// Step at which the orbit escaped, if it did (then `points` is partial).
    pub escaped_at: Option<usize>,
}

impl AttractorSample {
    /// Cluster representatives and sizes (agglomeration at
    /// [`SAMPLE_CLUSTER_TOL`]).
    pub fn clusters(&self) -> Vec<(C64, usize)> {
        let mut out: Vec<(C64, usize)> = Vec::new();
        for &z in &self.points {
            match out.iter_mut().find(|(r, _)| (r - z).norm() <= SAMPLE_CLUSTER_TOL) {
                Some(cl) => cl.1 += 1,
                None => out.push((z, 1)),
            }
        }
        out
    }

    /// Number of clusters when they are fewer than half the samples (a
    /// periodic-looking attractor), otherwise `None`.
    pub fn empirical_period(&self) -> Option<usize> {
        if self.escaped_at.is_some() || self.points.is_empty() {
            return None;
        }
        let k = self.clusters().len();
        (2 * k <= self.points.len()).then_some(k)
    }
}

pub fn attractor_sample(c: C64, transient: usize, count: usize) -> AttractorSample {
    let r2 = escape_radius(c).powi(2);
    let mut z = C64::new(0.0, 0.0);
    let mut points = Vec::with_capacity(count);
    let mut escaped_at = None;
    for k in 1..=transient + count {
        z = z * z + c;
        if z.norm_sqr() > r2 {
            escaped_at = Some(k);
            break;
        }
        if k > transient {
            points.push(z);
        }
    }
    AttractorSample {
        c,
        points,
        transient,
        count,
        escaped_at,
    }
}

/// One grid column of a real bifurcation scan.
#[derive(Clone, Debug, PartialEq)]
pub struct BifurcationRow {
    pub c: f64,
    pub xs: Vec<f64>,
    pub escaped: bool,
    pub period: Option<usize>,
}

/// A change of empirical period between two runs of the scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PeriodTransition {
    /// Midpoint of the gap between the two runs.
    pub c: f64,
    /// Period on the larger-`c` side.
    pub period_above: usize,
    /// Period on the smaller-`c` side.
    pub period_below: usize,
}

/// Attractor samples on the real grid `c_lo, c_lo + step, ..., c_hi`, in grid
/// order.
pub fn bifurcation_scan(c_lo: f64, c_hi: f64, step: f64, transient: usize, count: usize) -> Vec<BifurcationRow> {
    let grid = real_grid(c_lo, c_hi, step);
    map_range(grid.len(), |k| {
        let c = grid[k];
        let s = attractor_sample(C64::new(c, 0.0), transient, count);
        BifurcationRow {
            c,
            xs: s.points.iter().map(|z| z.re).collect(),
            escaped: s.escaped_at.is_some(),
            period: s.empirical_period(),
        }
    })
}

/// Maximal runs `(first index, last index, period)` of equal period with at
/// least [`MIN_RUN`] points.
pub fn period_runs(rows: &[BifurcationRow]) -> Vec<(usize, usize, usize)> {
    let mut runs = Vec::new();
    let mut i = 0;
    while i < rows.len() {
        let Some(p) = rows[i].period else {
            i += 1;
            continue;
        };
        let mut j = i;
        while j + 1 < rows.len() && rows[j + 1].period == Some(p) {
            j += 1;
        }
        if j + 1 - i >= MIN_RUN {
            runs.push((i, j, p));
        }
        i = j + 1;
    }
    runs
}

/// Transitions between consecutive runs of different period.
pub fn period_transitions(rows: &[BifurcationRow]) -> Vec<PeriodTransition> {
    period_runs(rows)
        .windows(2)
        .filter(|w| w[0].2 != w[1].2)
        .map(|w| {
            let lo = rows[w[0].1].c;
            let hi = rows[w[1].0].c;
            PeriodTransition {
                c: 0.5 * (lo + hi),
                period_above: w[1].2,
                period_below: w[0].2,
            }
        })
        .collect()
}
