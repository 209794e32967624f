//! Monte Carlo average of `||(f^n)'||^2` over the sphere.
//!
//! For a rational map of degree `d` this average (sphere area normalized to
//! one) equals `d^n`.

use crate::error::{DynError, Result};
use crate::par::chunked_sum;
use crate::rational::RationalMap;
use crate::rng::{sample_rng, sphere_point, uniform_pair};
use crate::sphere::SpherePoint;

pub const MIN_SAMPLES: usize = 10_000;

/// `||(f^n)'(z)||`, the product of spherical derivatives along the orbit.
pub fn iterate_spherical_derivative(map: &RationalMap, z: SpherePoint, n: usize) -> f64 {
    let mut w = z;
    let mut s = 1.0;
    for _ in 0..n {
        s *= map.spherical_derivative(w);
        w = map.eval(w);
    }
    s
}

/// Estimate of the normalized integral of `||(f^n)'||^2` from `samples`
/// uniform points. The result does not depend on the thread count.
pub fn expansion_integral(map: &RationalMap, n: usize, samples: usize, seed: u64) -> Result<f64> {
    if samples < MIN_SAMPLES {
        return Err(DynError::InvalidArgument(format!(
            "need at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let total = chunked_sum(samples, |range| {
        let mut rng = sample_rng(seed, range.start as u64);
        let mut acc = 0.0;
        for _ in range {
            let (u1, u2) = uniform_pair(&mut rng);
            let s = iterate_spherical_derivative(map, sphere_point(u1, u2), n);
            acc += s * s;
        }
        acc
    });
    Ok(total / samples as f64)
}
