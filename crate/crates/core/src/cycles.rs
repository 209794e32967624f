//! All cycles of a given exact period, from the roots of the cycle equation.
//!
//! The map is first conjugated by a fixed generic rotation so that no
//! periodic point sits at infinity. In the rotated coordinate the points of
//! period dividing `p` are the roots of `N(z) = a(z) - z b(z)`, where
//! `(a, b)` is the `p`-th homogeneous iterate of `(z, 1)`. `N` has degree
//! `d^p + 1` and is evaluated by iteration, never expanded.

use crate::error::{DynError, Result};
use crate::orbit::{refine_periodic_point, Cycle};
use crate::poly::{aberth, cluster, NewtonStep, RootSystem, CLUSTER_TOL};
use crate::rational::RationalMap;
use crate::sphere::{spherical_distance, Rotation, SpherePoint};
use num_complex::Complex64;

type C64 = Complex64;

/// Largest cycle-equation degree accepted.
pub const MAX_EQUATION_DEGREE: u64 = 1025;
/// Distance under which a root is identified with a point of lower period.
pub const LOWER_PERIOD_TOL: f64 = 1e-7;
/// Match radius around lower-period points whose multiplier makes them
/// multiple roots.
pub const DEGENERATE_TOL: f64 = 1e-4;

const EPS: f64 = f64::EPSILON;

/// The cycle equation of a map in homogeneous form.
pub struct CycleEquation {
    hp: Vec<C64>,
    hq: Vec<C64>,
    d: usize,
    period: usize,
}

impl CycleEquation {
    pub fn new(map: &RationalMap, period: usize) -> Result<Self> {
        equation_degree(map.degree(), period)?;
        let (hp, hq) = map.homogeneous();
        Ok(CycleEquation {
            hp: hp.to_vec(),
            hq: hq.to_vec(),
            d: map.degree(),
            period,
        })
    }

    /// One homogeneous step with derivatives, rescaled to unit max-norm.
    #[inline]
    fn step(&self, s: [C64; 4]) -> [C64; 4] {
        let [x, y, dx, dy] = s;
        let d = self.d;
        let mut xp = vec![C64::new(1.0, 0.0); d + 1];
        let mut yp = vec![C64::new(1.0, 0.0); d + 1];
        for k in 1..=d {
            xp[k] = xp[k - 1] * x;
            yp[k] = yp[k - 1] * y;
        }
        let mut fx = C64::new(0.0, 0.0);
        let mut gx = fx;
        let (mut fxx, mut fxy, mut gxx, mut gxy) = (fx, fx, fx, fx);
        for j in 0..=d {
            let m = xp[d - j] * yp[j];
            fx += self.hp[j] * m;
            gx += self.hq[j] * m;
            if j < d {
                let t = xp[d - j - 1] * yp[j] * (d - j) as f64;
                fxx += self.hp[j] * t;
                gxx += self.hq[j] * t;
            }
            if j > 0 {
                let t = xp[d - j] * yp[j - 1] * j as f64;
                fxy += self.hp[j] * t;
                gxy += self.hq[j] * t;
            }
        }
        let ndx = fxx * dx + fxy * dy;
        let ndy = gxx * dx + gxy * dy;
        let scale = fx.norm().max(gx.norm());
        if scale > 0.0 && scale.is_finite() {
            let inv = 1.0 / scale;
            [fx * inv, gx * inv, ndx * inv, ndy * inv]
        } else {
            [fx, gx, ndx, ndy]
        }
    }

    fn iterate(&self, mut s: [C64; 4]) -> [C64; 4] {
        for _ in 0..self.period {
            s = self.step(s);
        }
        s
    }
}

/// `d^p + 1`, or an error when it exceeds [`MAX_EQUATION_DEGREE`].
pub fn equation_degree(d: usize, p: usize) -> Result<u64> {
    let mut n: u64 = 1;
    for _ in 0..p {
        n = n.saturating_mul(d as u64);
        if n > MAX_EQUATION_DEGREE {
            return Err(DynError::EquationTooLarge {
                degree: n.saturating_add(1),
                limit: MAX_EQUATION_DEGREE,
            });
        }
    }
    let n = n + 1;
    if n > MAX_EQUATION_DEGREE {
        return Err(DynError::EquationTooLarge {
            degree: n,
            limit: MAX_EQUATION_DEGREE,
        });
    }
    Ok(n)
}

impl RootSystem for CycleEquation {
    fn degree(&self) -> usize {
        (self.d as u64).pow(self.period as u32) as usize + 1
    }

    fn newton(&self, z: C64) -> NewtonStep {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        let noise_factor = 8.0 * (self.period * self.d) as f64 * EPS;
        if z.norm() <= 1.0 {
            let [a, b, da, db] = self.iterate([z, one, one, zero]);
            let n = a - z * b;
            let dn = da - b - z * db;
            let mag = a.norm() + z.norm() * b.norm();
            let noise = noise_factor * (mag + dn.norm());
            NewtonStep {
                ratio: n / dn,
                at_noise: n.norm() <= noise,
                residual: n.norm() / mag,
            }
        } else {
            // N(z) = z^D R(1/z) with R(w) = w a(1, w) - b(1, w)
            let w = z.inv();
            let [a, b, da, db] = self.iterate([one, w, zero, one]);
            let r = w * a - b;
            let dr = a + w * da - db;
            let mag = w.norm() * a.norm() + b.norm();
            let noise = noise_factor * (mag + dr.norm());
            let big_d = self.degree() as f64;
            NewtonStep {
                ratio: z / (big_d - w * dr / r),
                at_noise: r.norm() <= noise,
                residual: r.norm() / mag,
            }
        }
    }
}

/// Points of period dividing `p` (deduplicated), as points of the sphere.
pub fn periodic_points(map: &RationalMap, p: usize) -> Result<Vec<SpherePoint>> {
    let rot = Rotation::generic();
    let g = map.conjugate(&rot)?;
    let eq = CycleEquation::new(&g, p)?;
    let (roots, _) = aberth(&eq).map_err(|e| DynError::CycleSearch {
        period: p,
        source: Box::new(e),
    })?;
    let distinct = cluster(&roots, CLUSTER_TOL);
    Ok(distinct
        .into_iter()
        .map(|(z, _)| {
            let w = rot.apply(SpherePoint::Finite(z));
            refine_periodic_point(map, w, p).unwrap_or(w)
        })
        .collect())
}

/// All cycles of exact period `1..=period_bound`, each classified.
pub fn find_cycles(map: &RationalMap, period_bound: usize) -> Result<Vec<Cycle>> {
    // (period, point, multiplier) of every point found so far
    let mut found: Vec<(usize, SpherePoint, C64)> = Vec::new();
    let mut cycles = Vec::new();
    for p in 1..=period_bound {
        let pts = periodic_points(map, p)?;
        // a lower-period point is a multiple root of the period-p equation
        // exactly when its multiplier raised to p/q is 1; near such points
        // the roots spread out and need a wider match
        let lower: Vec<(SpherePoint, f64)> = found
            .iter()
            .filter(|(q, _, _)| p % q == 0)
            .map(|&(q, w, lambda)| {
                let near_root_of_unity = (lambda.powu((p / q) as u32) - 1.0).norm() < 1e-3;
                (w, if near_root_of_unity { DEGENERATE_TOL } else { LOWER_PERIOD_TOL })
            })
            .collect();
        let exact: Vec<SpherePoint> = pts
            .into_iter()
            .filter(|z| lower.iter().all(|(w, tol)| spherical_distance(*z, *w) >= *tol))
            .collect();
        let mut used = vec![false; exact.len()];
        for i in 0..exact.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let mut orbit = vec![exact[i]];
            for _ in 1..p {
                let img = map.eval(*orbit.last().unwrap());
                let next = (0..exact.len())
                    .filter(|&j| !used[j])
                    .min_by(|&a, &b| {
                        spherical_distance(exact[a], img).total_cmp(&spherical_distance(exact[b], img))
                    })
                    .filter(|&j| spherical_distance(exact[j], img) < 1e-6);
                match next {
                    Some(j) => {
                        used[j] = true;
                        orbit.push(exact[j]);
                    }
                    None => orbit.push(img),
                }
            }
            let cyc = Cycle::from_points(map, orbit);
            found.extend(cyc.points.iter().map(|&z| (p, z, cyc.multiplier)));
            cycles.push(cyc);
        }
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::CycleClass;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn z_squared_up_to_period_two() {
        let f = RationalMap::quadratic(c(0.0, 0.0));
        let cyc = find_cycles(&f, 2).unwrap();
        let fixed: Vec<_> = cyc.iter().filter(|x| x.period == 1).collect();
        assert_eq!(fixed.len(), 3);
        assert!(fixed.iter().any(|x| x.points[0] == SpherePoint::Infinity));
        let zero = fixed.iter().find(|x| x.points[0].approx_eq(&SpherePoint::new(0.0, 0.0), 1e-9)).unwrap();
        assert_eq!(zero.class, CycleClass::Superattracting);
        let one = fixed.iter().find(|x| x.points[0].approx_eq(&SpherePoint::new(1.0, 0.0), 1e-9)).unwrap();
        assert!((one.multiplier - c(2.0, 0.0)).norm() < 1e-12);
        let two: Vec<_> = cyc.iter().filter(|x| x.period == 2).collect();
        assert_eq!(two.len(), 1);
        assert!((two[0].multiplier - c(4.0, 0.0)).norm() < 1e-9);
        let w = C64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        assert!(two[0].contains(SpherePoint::Finite(w), 1e-9));
        assert!(two[0].contains(SpherePoint::Finite(w.conj()), 1e-9));
    }

    #[test]
    fn c_i_two_cycle() {
        let f = RationalMap::quadratic(c(0.0, 1.0));
        let cyc = find_cycles(&f, 2).unwrap();
        let two: Vec<_> = cyc.iter().filter(|x| x.period == 2).collect();
        assert_eq!(two.len(), 1);
        assert!(two[0].contains(SpherePoint::new(-1.0, 1.0), 1e-9));
        assert!(two[0].contains(SpherePoint::new(0.0, -1.0), 1e-9));
        assert!((two[0].multiplier - c(4.0, 4.0)).norm() < 1e-9);
        assert_eq!(two[0].class, CycleClass::Repelling);
    }

    #[test]
    fn parabolic_fixed_point() {
        let f = RationalMap::quadratic(c(-0.75, 0.0));
        let cyc = find_cycles(&f, 2).unwrap();
        let half = cyc
            .iter()
            .find(|x| x.period == 1 && x.points[0].approx_eq(&SpherePoint::new(-0.5, 0.0), 1e-7))
            .unwrap();
        assert_eq!(half.class, CycleClass::Indifferent);
        assert!((half.multiplier - c(-1.0, 0.0)).norm() < 1e-7);
        // the 2-cycle collapses onto the fixed point, leaving none of exact period 2
        assert_eq!(cyc.iter().filter(|x| x.period == 2).count(), 0);
    }

    #[test]
    fn cycle_counts_for_quadratics() {
        // number of points of exact period p is 2^p minus lower divisors (plus infinity for p = 1)
        let f = RationalMap::quadratic(c(-0.3, 0.4));
        let cyc = find_cycles(&f, 6).unwrap();
        let expect = [3usize, 1, 2, 3, 6, 9];
        for (p, &n) in (1..=6).zip(expect.iter()) {
            assert_eq!(cyc.iter().filter(|x| x.period == p).count(), n, "period {p}");
        }
        for x in &cyc {
            assert!(x.closure_error(&f) < 1e-8);
        }
    }

    #[test]
    fn oversized_equation_rejected() {
        assert!(matches!(equation_degree(2, 11), Err(DynError::EquationTooLarge { .. })));
        assert_eq!(equation_degree(2, 8).unwrap(), 257);
    }
}
