//! Centers of hyperbolic components: parameters whose critical point is
//! periodic.

use crate::error::{DynError, Result};
use crate::poly::{aberth, cluster, NewtonStep, RootSystem, CLUSTER_TOL};
use num_complex::Complex64;

type C64 = Complex64;

pub const MAX_CENTER_PERIOD: usize = 7;

/// `c -> f_c^p(0)` as a root system in `c`, of degree `2^(p-1)`.
struct CenterEquation {
    period: usize,
}

/// `f_c^p(0)`, its `c`-derivative and a running rounding-error bound.
pub fn critical_iterate(c: C64, p: usize) -> (C64, C64, f64) {
    let eps = f64::EPSILON;
    let mut z = C64::new(0.0, 0.0);
    let mut dz = C64::new(0.0, 0.0);
    let mut err = 0.0;
    for _ in 0..p {
        let next = z * z + c;
        err = 2.0 * z.norm() * err + eps * (z.norm_sqr() + c.norm() + next.norm());
        dz = 2.0 * z * dz + 1.0;
        z = next;
    }
    (z, dz, err)
}

impl RootSystem for CenterEquation {
    fn degree(&self) -> usize {
        1 << (self.period - 1)
    }

    fn newton(&self, c: C64) -> NewtonStep {
        let (g, dg, err) = critical_iterate(c, self.period);
        NewtonStep {
            ratio: g / dg,
            at_noise: g.norm() <= 2.0 * err,
            residual: g.norm(),
        }
    }

    fn initial_radius(&self) -> f64 {
        2.0
    }
}

fn polish(c: C64, p: usize) -> C64 {
    let mut c = c;
    for _ in 0..4 {
        let (g, dg, _) = critical_iterate(c, p);
        let step = g / dg;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        c -= step;
    }
    c
}

/// Roots of `f_c^p(0) = 0` with exact period `p`, sorted by real then
/// imaginary part.
pub fn component_centers(p: usize) -> Result<Vec<C64>> {
    if p == 0 || p > MAX_CENTER_PERIOD {
        return Err(DynError::InvalidArgument(format!(
            "period must lie in 1..={MAX_CENTER_PERIOD}, got {p}"
        )));
    }
    let mut lower: Vec<C64> = Vec::new();
    for q in 1..p {
        if p % q == 0 {
            lower.extend(component_centers(q)?);
        }
    }
    let (roots, _) = aberth(&CenterEquation { period: p }).map_err(|e| DynError::CycleSearch {
        period: p,
        source: Box::new(e),
    })?;
    let mut out: Vec<C64> = cluster(&roots, CLUSTER_TOL)
        .into_iter()
        .map(|(c, _)| polish(c, p))
        .filter(|c| lower.iter().all(|l| (l - c).norm() > 1e-7))
        .map(|c| if c.im.abs() < 1e-14 { C64::new(c.re, 0.0) } else { c })
        .collect();
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}
