//! Green's function and external angles of escaping points.

use super::angle::Angle;
use super::trace::{ray_point, DEFAULT_STEPS_PER_HALVING, FAR_RADIUS};
use crate::error::{DynError, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

type C64 = Complex64;

/// Orbits passing this close to 0 make the angle branch undecidable.
pub const BRANCH_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GreenValue {
    pub z: C64,
    pub g: f64,
}

/// `2^-n log|f^n(z)|` at the first `n` with `|f^n(z)| > 1e4`, or 0 when the
/// orbit stays bounded for `n_max` steps.
pub fn green_dynamical(c: C64, z: C64, n_max: usize) -> GreenValue {
    let mut w = z;
    let mut scale = 1.0;
    for _ in 0..=n_max {
        let r = w.norm();
        if r > FAR_RADIUS {
            return GreenValue { z, g: scale * r.ln() };
        }
        w = w * w + c;
        scale *= 0.5;
    }
    GreenValue { z, g: 0.0 }
}

/// The external angle of an escaping point.
///
/// The angle is read off far out, `arg φ_c(f^n z) / 2π`, and halved back
/// step by step; at each step the half `θ/2` or `θ/2 + 1/2` whose ray point
/// at the right potential is closer to `f^k(z)` is kept.
pub fn external_angle(c: C64, z: C64, n_max: usize) -> Result<f64> {
    let mut orbit = vec![z];
    while orbit.last().unwrap().norm() <= FAR_RADIUS {
        if orbit.len() > n_max {
            return Err(DynError::InvalidArgument(format!("{z} does not escape within {n_max} steps")));
        }
        let w = *orbit.last().unwrap();
        orbit.push(w * w + c);
    }
    let n = orbit.len() - 1;
    let zn = orbit[n];
    let phi = zn + c / (2.0 * zn);
    let g_n = phi.norm().ln();
    let mut theta = (phi.arg() / TAU).rem_euclid(1.0);
    for k in (0..n).rev() {
        let zk = orbit[k];
        if zk.norm() < BRANCH_TOL {
            return Err(DynError::Ambiguous(format!("orbit of {z} passes within {BRANCH_TOL:e} of 0")));
        }
        let g_k = g_n / ((n - k) as f64).exp2();
        let a = theta / 2.0;
        let b = a + 0.5;
        let pa = ray_point(c, Angle::Real(a), g_k, DEFAULT_STEPS_PER_HALVING)?;
        let pb = ray_point(c, Angle::Real(b), g_k, DEFAULT_STEPS_PER_HALVING)?;
        theta = if (pa - zk).norm() <= (pb - zk).norm() { a } else { b };
    }
    Ok(theta)
}
