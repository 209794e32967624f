//! Hyperbolicity certificates from critical orbits, and postcritical sets.

use crate::orbit::{attracting_limit, Cycle, LimitOutcome, LOOP_TOL};
use crate::rational::RationalMap;
use crate::sphere::{spherical_distance, SpherePoint, POINT_TOL};
use crate::Result;

/// Distance under which two refined cycles are considered the same.
const SAME_CYCLE_TOL: f64 = 1e-7;

/// Where the orbit of one critical point ends up.
#[derive(Clone, Debug, PartialEq)]
pub enum Fate {
    /// Converges to an attracting (or superattracting) cycle.
    Attracted(Cycle),
    /// Escapes to the superattracting fixed point at infinity of a polynomial
    /// (or is that point).
    Infinity,
    /// Lands on (or converges to) a cycle that is not attracting.
    LandsOnNonAttracting(Cycle),
    /// No verdict within the budget.
    Unresolved(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalFate {
    pub point: SpherePoint,
    pub multiplicity: usize,
    pub fate: Fate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Hyperbolic,
    NotCertified,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicityCertificate {
    pub status: Status,
    /// Distinct attracting cycles reached by critical orbits (infinity for a
    /// polynomial is reported through `infinity_attracts`, not here).
    pub attractors: Vec<Cycle>,
    pub infinity_attracts: bool,
    pub fates: Vec<CriticalFate>,
    /// Number of distinct attracting cycles in `attractors`.
    pub n_attracting: usize,
}

/// Follows every critical point to its limit.
///
/// `Hyperbolic` is reported only when every critical orbit resolves to an
/// attracting cycle (or to infinity for a polynomial); anything else leaves
/// the map uncertified.
pub fn hyperbolicity_certificate(map: &RationalMap, budget: usize) -> Result<HyperbolicityCertificate> {
    let crit = map.critical_points()?;
    let poly = map.is_polynomial() && map.degree() >= 2;
    let mut attractors: Vec<Cycle> = Vec::new();
    let mut fates = Vec::with_capacity(crit.len());
    let mut infinity_attracts = false;
    for (point, multiplicity) in crit {
        let fate = if poly && point.is_infinite() {
            infinity_attracts = true;
            Fate::Infinity
        } else {
            match attracting_limit(map, point, budget, LOOP_TOL) {
                LimitOutcome::Escaped { .. } => {
                    infinity_attracts = true;
                    Fate::Infinity
                }
                LimitOutcome::Exhausted => Fate::Unresolved(format!("no convergence within {budget} steps")),
                LimitOutcome::NewtonFailed { period, point } => {
                    Fate::Unresolved(format!("refinement of period-{period} loop near {point} failed"))
                }
                LimitOutcome::Cycle(c) if c.class.is_attracting() => {
                    if poly && c.period == 1 && c.points[0].is_infinite() {
                        infinity_attracts = true;
                        Fate::Infinity
                    } else {
                        if !attractors.iter().any(|a| same_cycle(a, &c)) {
                            attractors.push(c.clone());
                        }
                        Fate::Attracted(c)
                    }
                }
                LimitOutcome::Cycle(c) => Fate::LandsOnNonAttracting(c),
            }
        };
        fates.push(CriticalFate {
            point,
            multiplicity,
            fate,
        });
    }
    let ok = fates
        .iter()
        .all(|f| matches!(f.fate, Fate::Attracted(_) | Fate::Infinity));
    Ok(HyperbolicityCertificate {
        status: if ok { Status::Hyperbolic } else { Status::NotCertified },
        n_attracting: attractors.len(),
        attractors,
        infinity_attracts,
        fates,
    })
}

fn same_cycle(a: &Cycle, b: &Cycle) -> bool {
    a.period == b.period && a.points.iter().any(|p| spherical_distance(*p, b.points[0]) < SAME_CYCLE_TOL)
}

/// Finite truncation of the postcritical set.
#[derive(Clone, Debug, PartialEq)]
pub struct PostcriticalApprox {
    pub points: Vec<SpherePoint>,
    pub depth: usize,
}

/// `{f^n(c) : c critical, 1 <= n <= depth}`, deduplicated to
/// [`POINT_TOL`]. For a polynomial the critical point at infinity (which
/// only ever maps to itself) is left out.
pub fn postcritical_approx(map: &RationalMap, depth: usize) -> Result<PostcriticalApprox> {
    let crit = map.critical_points()?;
    let poly = map.is_polynomial();
    let mut points: Vec<SpherePoint> = Vec::new();
    for (c, _) in crit {
        if poly && c.is_infinite() {
            continue;
        }
        let mut z = c;
        for _ in 0..depth {
            z = map.eval(z);
            if !points.iter().any(|p| spherical_distance(*p, z) < POINT_TOL) {
                points.push(z);
            }
        }
    }
    Ok(PostcriticalApprox { points, depth })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::CycleClass;
    use num_complex::Complex64;

    fn q(re: f64, im: f64) -> RationalMap {
        RationalMap::quadratic(Complex64::new(re, im))
    }

    #[test]
    fn c_zero_is_hyperbolic() {
        let cert = hyperbolicity_certificate(&q(0.0, 0.0), 10_000).unwrap();
        assert_eq!(cert.status, Status::Hyperbolic);
        assert_eq!(cert.n_attracting, 1);
        assert!(cert.infinity_attracts);
        assert_eq!(cert.attractors[0].points, vec![SpherePoint::new(0.0, 0.0)]);
    }

    #[test]
    fn basilica_is_hyperbolic() {
        let cert = hyperbolicity_certificate(&q(-1.0, 0.0), 10_000).unwrap();
        assert_eq!(cert.status, Status::Hyperbolic);
        let a = &cert.attractors[0];
        assert_eq!(a.period, 2);
        assert_eq!(a.multiplier.norm(), 0.0);
        assert_eq!(a.class, CycleClass::Superattracting);
    }

    #[test]
    fn misiurewicz_not_certified() {
        let f = q(0.0, 1.0);
        let cert = hyperbolicity_certificate(&f, 10_000).unwrap();
        assert_eq!(cert.status, Status::NotCertified);
        let fate = cert.fates.iter().find(|f| !f.point.is_infinite()).unwrap();
        match &fate.fate {
            Fate::LandsOnNonAttracting(c) => {
                assert_eq!(c.period, 2);
                assert!((c.multiplier.norm() - 4.0 * 2f64.sqrt()).abs() < 1e-9);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn postcritical_examples() {
        let pc = postcritical_approx(&q(0.0, 0.0), 10).unwrap();
        assert_eq!(pc.points, vec![SpherePoint::new(0.0, 0.0)]);
        let pc = postcritical_approx(&q(-1.0, 0.0), 10).unwrap();
        assert_eq!(pc.points, vec![SpherePoint::new(-1.0, 0.0), SpherePoint::new(0.0, 0.0)]);
        let pc = postcritical_approx(&q(0.0, 1.0), 10).unwrap();
        assert_eq!(
            pc.points,
            vec![SpherePoint::new(0.0, 1.0), SpherePoint::new(-1.0, 1.0), SpherePoint::new(0.0, -1.0)]
        );
    }
}
