//! The fixed point `α` of `z² + c` (the one not at the end of the ray `R_0`).

use super::angle::Angle;
use super::trace::trace_ray;
use crate::error::{DynError, Result};
use crate::orbit::CycleClass;
use num_complex::Complex64;

type C64 = Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaFixedPoint {
    pub point: C64,
    pub multiplier: C64,
    pub class: CycleClass,
    /// Whether `R_0` was traced to its landing to pick the branch (otherwise
    /// the principal square root decided).
    pub decided_by_ray: bool,
}

fn polish(c: C64, z: C64) -> C64 {
    let mut z = z;
    for _ in 0..3 {
        let d = 2.0 * z - 1.0;
        if d.norm() == 0.0 {
            break;
        }
        z -= (z * z + c - z) / d;
    }
    z
}

pub fn alpha_fixed_point(c: C64) -> Result<AlphaFixedPoint> {
    let disc = 1.0 - 4.0 * c;
    if disc.norm() < 1e-12 {
        return Err(DynError::DegenerateMap("c = 1/4 has a double fixed point".into()));
    }
    let s = disc.sqrt();
    let beta0 = polish(c, (1.0 + s) / 2.0);
    let alpha0 = polish(c, (1.0 - s) / 2.0);
    // β is the landing point of R_0; prefer the ray's own verdict
    let mut pick = (alpha0, false);
    if let Ok(ray) = trace_ray(c, Angle::Rational { num: 0, den: 1 }, 1e-8, 8) {
        if let Some(l) = ray.landing {
            let (da, db) = ((l - alpha0).norm(), (l - beta0).norm());
            if da.min(db) < 1e-6 {
                pick = (if db <= da { alpha0 } else { beta0 }, true);
            }
        }
    }
    let multiplier = 2.0 * pick.0;
    Ok(AlphaFixedPoint {
        point: pick.0,
        multiplier,
        class: CycleClass::from_multiplier(multiplier),
        decided_by_ray: pick.1,
    })
}
