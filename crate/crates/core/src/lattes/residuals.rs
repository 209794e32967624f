//! Numerical checks of the semiconjugacy and of the invariant line field.

use super::weierstrass::Lattice;
use crate::error::{DynError, Result};
use crate::par::map_range;
use crate::rational::RationalMap;
use crate::rng::{stream_rng, uniform_pair};
use crate::sphere::{spherical_distance, SpherePoint};
use num_complex::Complex64;
use std::f64::consts::PI;

type C64 = Complex64;

/// Distance, in lattice coordinates, kept from lattice and half-lattice points.
pub const SAMPLE_MARGIN: f64 = 0.05;
pub const MIN_RESIDUAL_SAMPLES: usize = 1000;
const MAX_REJECTIONS: usize = 1000;

/// The line `L_w` at `w = ℘(z)`: the image of the horizontal direction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineFieldSample {
    pub base: SpherePoint,
    /// Angle in `[0, π)`.
    pub direction: f64,
}

pub fn line_field_sample(lattice: &Lattice, z: C64) -> Result<LineFieldSample> {
    let (w, dw) = lattice.wp_both(z)?;
    Ok(LineFieldSample {
        base: SpherePoint::Finite(w),
        direction: dw.arg().rem_euclid(PI),
    })
}

/// Distance between two angles taken mod π.
pub fn angle_diff_mod_pi(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(PI);
    d.min(PI - d)
}

/// Max-norm distance of `(a, b)` to the half lattice `(Z/2)²`.
fn half_lattice_distance(a: f64, b: f64) -> f64 {
    let d = |x: f64| (2.0 * x - (2.0 * x).round()).abs() / 2.0;
    d(a).max(d(b))
}

/// Sample `i`: uniform in the shrunk parallelogram, away from the half
/// lattice for both `z` and `n z`.
fn sample_point(seed: u64, i: usize, n: u32, tau: C64) -> Result<C64> {
    let mut rng = stream_rng(seed, i as u64);
    for _ in 0..MAX_REJECTIONS {
        let (u, v) = uniform_pair(&mut rng);
        let a = SAMPLE_MARGIN + (1.0 - 2.0 * SAMPLE_MARGIN) * u;
        let b = SAMPLE_MARGIN + (1.0 - 2.0 * SAMPLE_MARGIN) * v;
        let nf = n as f64;
        if half_lattice_distance(a, b) >= SAMPLE_MARGIN && half_lattice_distance(nf * a, nf * b) >= SAMPLE_MARGIN {
            return Ok(C64::new(a, 0.0) + tau * b);
        }
    }
    Err(DynError::InvalidArgument("sampling region is empty".into()))
}

fn check_samples(samples: usize) -> Result<()> {
    if samples < MIN_RESIDUAL_SAMPLES {
        return Err(DynError::InvalidArgument(format!(
            "need at least {MIN_RESIDUAL_SAMPLES} samples, got {samples}"
        )));
    }
    Ok(())
}

fn max_of(values: Vec<Result<f64>>) -> Result<f64> {
    let mut m: f64 = 0.0;
    for v in values {
        let v = v?;
        // NaN must not hide
        if v.is_nan() {
            return Ok(f64::NAN);
        }
        m = m.max(v);
    }
    Ok(m)
}

/// `sup_z d(f(℘(z)), ℘(n z))` in the spherical metric.
pub fn semiconjugacy_residual(map: &RationalMap, n: u32, lattice: &Lattice, samples: usize, seed: u64) -> Result<f64> {
    check_samples(samples)?;
    let vals = map_range(samples, |i| {
        let z = sample_point(seed, i, n, lattice.tau)?;
        let w = lattice.wp(z)?;
        let lhs = map.eval(SpherePoint::Finite(w));
        let rhs = SpherePoint::Finite(lattice.wp(z * n as f64)?);
        Ok(spherical_distance(lhs, rhs))
    });
    max_of(vals)
}

/// `sup_z` of the mod-π angle between `f'(℘(z)) ℘'(z)` and `℘'(n z)`.
pub fn line_field_residual(map: &RationalMap, n: u32, lattice: &Lattice, samples: usize, seed: u64) -> Result<f64> {
    check_samples(samples)?;
    let vals = map_range(samples, |i| {
        let z = sample_point(seed, i, n, lattice.tau)?;
        let (w, dw) = lattice.wp_both(z)?;
        let pushed = map.derivative(w) * dw;
        let target = lattice.wp_prime(z * n as f64)?;
        Ok(angle_diff_mod_pi(pushed.arg(), target.arg()))
    });
    max_of(vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattes::map::lattes_map;
    use crate::poly::Poly;

    fn lat(re: f64, im: f64) -> Lattice {
        Lattice::new(C64::new(re, im)).unwrap()
    }

    #[test]
    fn residuals_small_for_n2() {
        for l in [lat(0.0, 1.0), lat(0.3, 1.2), lat(0.5, 0.9)] {
            let f = lattes_map(2, &l).unwrap();
            let s = semiconjugacy_residual(&f, 2, &l, 2000, 1).unwrap();
            let a = line_field_residual(&f, 2, &l, 2000, 1).unwrap();
            assert!(s < 1e-8, "{}: {s}", l.tau);
            assert!(a < 1e-8, "{}: {a}", l.tau);
        }
    }

    #[test]
    fn residuals_small_for_n4() {
        let l = lat(0.3, 1.2);
        let f = lattes_map(4, &l).unwrap();
        assert!(semiconjugacy_residual(&f, 4, &l, 1000, 2).unwrap() < 1e-8);
        assert!(line_field_residual(&f, 4, &l, 1000, 2).unwrap() < 1e-8);
    }

    #[test]
    fn corrupted_map_detected() {
        let l = lat(0.0, 1.0);
        let f = lattes_map(2, &l).unwrap();
        // relative change of 1e-3 in each nonzero numerator coefficient
        for k in [0, 2, 4] {
            let mut c = f.numerator().coeffs().to_vec();
            c[k] *= 1.0 + 1e-3;
            let g = RationalMap::new(Poly::new(c), f.denominator().clone()).unwrap();
            assert!(semiconjugacy_residual(&g, 2, &l, 1000, 3).unwrap() > 1e-4, "coefficient {k}");
        }
        let mut c = f.numerator().coeffs().to_vec();
        c[0] += 1e-3;
        let g = RationalMap::new(Poly::new(c), f.denominator().clone()).unwrap();
        assert!(semiconjugacy_residual(&g, 2, &l, 1000, 3).unwrap() > 1e-4);
    }

    #[test]
    fn line_field_is_even() {
        let l = lat(0.3, 1.2);
        let z = C64::new(0.23, 0.41);
        let a = line_field_sample(&l, z).unwrap();
        let b = line_field_sample(&l, -z).unwrap();
        assert!(spherical_distance(a.base, b.base) < 1e-12);
        assert!(angle_diff_mod_pi(a.direction, b.direction) < 1e-12);
    }

    #[test]
    fn too_few_samples_rejected() {
        let l = lat(0.0, 1.0);
        let f = lattes_map(2, &l).unwrap();
        assert!(semiconjugacy_residual(&f, 2, &l, 10, 0).is_err());
    }
}
