//! Forward orbits, loop detection, cycle refinement and Lyapunov exponents.

use crate::error::{DynError, Result};
use crate::rational::RationalMap;
use crate::sphere::{spherical_distance, Chart, SpherePoint, POINT_TOL};
use num_complex::Complex64;

type C64 = Complex64;

/// Loop-detection tolerance (spherical distance).
pub const LOOP_TOL: f64 = 1e-12;
/// Band around `|λ| = 1` classified as indifferent.
pub const INDIFFERENT_BAND: f64 = 1e-6;
/// Multipliers at or below this modulus are superattracting.
pub const SUPERATTRACTING_TOL: f64 = 1e-12;
/// Default iteration budget for certificates.
pub const DEFAULT_BUDGET: usize = 1_000_000;
/// At most this many orbit points are kept in an [`OrbitRecord`].
pub const STORED_POINTS: usize = 10_000;

const LN_FLOOR: f64 = -708.3964185322641; // ln(f64::MIN_POSITIVE)

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycleClass {
    Superattracting,
    Attracting,
    Indifferent,
    Repelling,
}

impl CycleClass {
    pub fn from_multiplier(lambda: C64) -> Self {
        let m = lambda.norm();
        if m <= SUPERATTRACTING_TOL {
            CycleClass::Superattracting
        } else if (m - 1.0).abs() <= INDIFFERENT_BAND {
            CycleClass::Indifferent
        } else if m < 1.0 {
            CycleClass::Attracting
        } else {
            CycleClass::Repelling
        }
    }

    pub fn is_attracting(&self) -> bool {
        matches!(self, CycleClass::Superattracting | CycleClass::Attracting)
    }

    pub fn name(&self) -> &'static str {
        match self {
            CycleClass::Superattracting => "superattracting",
            CycleClass::Attracting => "attracting",
            CycleClass::Indifferent => "indifferent",
            CycleClass::Repelling => "repelling",
        }
    }
}

/// A periodic orbit with its multiplier.
#[derive(Clone, Debug, PartialEq)]
pub struct Cycle {
    pub points: Vec<SpherePoint>,
    pub period: usize,
    pub multiplier: C64,
    pub class: CycleClass,
}

fn snap(p: SpherePoint) -> SpherePoint {
    if spherical_distance(p, SpherePoint::Infinity) < 1e-14 {
        SpherePoint::Infinity
    } else {
        p
    }
}

impl Cycle {
    /// Builds the cycle through `z` by forward iteration.
    pub fn from_point(map: &RationalMap, z: SpherePoint, period: usize) -> Cycle {
        let mut points = Vec::with_capacity(period);
        points.push(snap(z));
        for k in 1..period {
            points.push(snap(map.eval(points[k - 1])));
        }
        Self::from_points(map, points)
    }

    /// Builds a cycle from its points in dynamical order.
    pub fn from_points(map: &RationalMap, points: Vec<SpherePoint>) -> Cycle {
        let multiplier = multiplier_of(map, &points, 0);
        Cycle {
            period: points.len(),
            class: CycleClass::from_multiplier(multiplier),
            points,
            multiplier,
        }
    }

    /// Multiplier computed starting from `points[base]`.
    pub fn multiplier_from(&self, map: &RationalMap, base: usize) -> C64 {
        multiplier_of(map, &self.points, base)
    }

    pub fn contains(&self, z: SpherePoint, tol: f64) -> bool {
        self.points.iter().any(|p| spherical_distance(*p, z) < tol)
    }

    /// Largest distance between `f^p(z)` and `z` over the cycle points.
    pub fn closure_error(&self, map: &RationalMap) -> f64 {
        self.points
            .iter()
            .map(|&z| {
                let mut w = z;
                for _ in 0..self.period {
                    w = map.eval(w);
                }
                spherical_distance(w, z)
            })
            .fold(0.0, f64::max)
    }
}

/// Product of chart-local derivatives around the cycle, starting at `base`.
fn multiplier_of(map: &RationalMap, points: &[SpherePoint], base: usize) -> C64 {
    let p = points.len();
    let mut lambda = C64::new(1.0, 0.0);
    for k in 0..p {
        let i = (base + k) % p;
        let (cin, u) = points[i].chart();
        let (cout, _) = points[(i + 1) % p].chart();
        lambda *= map.chart_eval(cin, u).local_derivative(cout);
    }
    lambda
}

/// `f^p` in the chart `chart`, returning the image coordinate in the same
/// chart and the derivative.
pub fn iterate_in_chart(map: &RationalMap, chart: Chart, u0: C64, p: usize) -> (C64, C64) {
    let mut ch = chart;
    let mut u = u0;
    let mut d = C64::new(1.0, 0.0);
    for _ in 0..p {
        let v = map.chart_eval(ch, u);
        let out = v.output_chart();
        d *= v.local_derivative(out);
        u = match out {
            Chart::Origin => v.a / v.b,
            Chart::Infinity => v.b / v.a,
        };
        ch = out;
    }
    if ch != chart {
        d *= -(u * u).inv();
        u = u.inv();
    }
    (u, d)
}

/// Newton's method on `f^p(u) - u` in the chart of `z`.
///
/// Fails if the iteration diverges or wanders more than `1e-6` away.
pub fn refine_periodic_point(map: &RationalMap, z: SpherePoint, p: usize) -> Option<SpherePoint> {
    let (chart, u0) = z.chart();
    let mut u = u0;
    for _ in 0..60 {
        let (v, d) = iterate_in_chart(map, chart, u, p);
        let g = v - u;
        if g == C64::new(0.0, 0.0) {
            break;
        }
        let step = g / (d - 1.0);
        if !step.re.is_finite() || !step.im.is_finite() {
            return None;
        }
        u -= step;
        if step.norm() <= 1e-15 * u.norm().max(1.0) {
            break;
        }
    }
    let out = SpherePoint::from_chart(chart, u);
    (spherical_distance(out, z) < 1e-6).then_some(snap(out))
}

#[derive(Clone, Debug, PartialEq)]
pub enum OrbitVerdict {
    /// Left the escape disk (for polynomials: attracted to infinity).
    Escaped { step: usize },
    /// Numerically periodic; `point` is the last iterate.
    Converged {
        period: usize,
        step: usize,
        point: SpherePoint,
    },
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRecord {
    pub start: SpherePoint,
    /// The first iterates, `points[0] = start`, capped at [`STORED_POINTS`].
    pub points: Vec<SpherePoint>,
    pub steps: usize,
    pub verdict: OrbitVerdict,
    /// Mean of `ln ||f'||` over the visited points.
    pub lyapunov_estimate: f64,
}

fn ln_clamped(x: f64) -> f64 {
    if x > 0.0 {
        x.ln().max(LN_FLOOR)
    } else {
        LN_FLOOR
    }
}

fn escaped(z: SpherePoint, radius: Option<f64>) -> bool {
    match (z, radius) {
        (_, None) => false,
        (SpherePoint::Infinity, Some(_)) => true,
        (SpherePoint::Finite(w), Some(r)) => w.norm() > r,
    }
}

/// Smallest divisor `q` of `lam` with `f^q(z)` back at `z`.
fn minimal_period(map: &RationalMap, z: SpherePoint, lam: usize) -> usize {
    for q in 1..lam {
        if lam % q != 0 {
            continue;
        }
        let mut w = z;
        for _ in 0..q {
            w = map.eval(w);
        }
        if spherical_distance(w, z) < POINT_TOL {
            return q;
        }
    }
    lam
}

/// Iterates `z0` for at most `budget` steps with Brent loop detection.
///
/// The escape radius defaults to [`RationalMap::escape_radius`]; pass
/// `Some(f64::INFINITY)` to disable escape.
pub fn iterate_orbit(
    map: &RationalMap,
    z0: SpherePoint,
    budget: usize,
    escape_radius: Option<f64>,
) -> OrbitRecord {
    iterate_orbit_tol(map, z0, budget, escape_radius, LOOP_TOL)
}

pub fn iterate_orbit_tol(
    map: &RationalMap,
    z0: SpherePoint,
    budget: usize,
    escape_radius: Option<f64>,
    tol: f64,
) -> OrbitRecord {
    let radius = escape_radius.or_else(|| map.escape_radius());
    let mut points = vec![z0];
    let mut log_sum = 0.0;
    let finish = |points: Vec<SpherePoint>, steps: usize, verdict, log_sum: f64| OrbitRecord {
        start: z0,
        points,
        steps,
        verdict,
        lyapunov_estimate: if steps == 0 { 0.0 } else { log_sum / steps as f64 },
    };
    if escaped(z0, radius) {
        return finish(points, 0, OrbitVerdict::Escaped { step: 0 }, 0.0);
    }
    let mut tortoise = z0;
    let mut hare = z0;
    let mut power = 1usize;
    let mut lam = 0usize;
    for step in 1..=budget {
        log_sum += ln_clamped(map.spherical_derivative(hare));
        hare = map.eval(hare);
        lam += 1;
        if points.len() < STORED_POINTS {
            points.push(hare);
        }
        if escaped(hare, radius) {
            return finish(points, step, OrbitVerdict::Escaped { step }, log_sum);
        }
        if spherical_distance(tortoise, hare) <= tol {
            let period = minimal_period(map, hare, lam);
            let verdict = OrbitVerdict::Converged {
                period,
                step,
                point: hare,
            };
            return finish(points, step, verdict, log_sum);
        }
        if lam == power {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
    }
    finish(points, budget, OrbitVerdict::BudgetExhausted, log_sum)
}

/// Result of following an orbit to its limit.
#[derive(Clone, Debug, PartialEq)]
pub enum LimitOutcome {
    Cycle(Cycle),
    Escaped { step: usize },
    Exhausted,
    /// A loop was detected but Newton refinement did not settle.
    NewtonFailed { period: usize, point: SpherePoint },
}

impl LimitOutcome {
    pub fn cycle(&self) -> Option<&Cycle> {
        match self {
            LimitOutcome::Cycle(c) => Some(c),
            _ => None,
        }
    }
}

/// Follows the orbit of `z0`; on numerical convergence refines and
/// classifies the limit cycle.
pub fn attracting_limit(map: &RationalMap, z0: SpherePoint, budget: usize, tol: f64) -> LimitOutcome {
    let rec = iterate_orbit_tol(map, z0, budget, None, tol);
    match rec.verdict {
        OrbitVerdict::Escaped { step } => LimitOutcome::Escaped { step },
        OrbitVerdict::BudgetExhausted => LimitOutcome::Exhausted,
        OrbitVerdict::Converged { period, point, .. } => match refine_periodic_point(map, point, period) {
            Some(z) => LimitOutcome::Cycle(Cycle::from_point(map, z, period)),
            None => LimitOutcome::NewtonFailed { period, point },
        },
    }
}

/// Mean of `ln ||f'||` over steps `burn_in..budget` of the orbit of `z0`.
///
/// Logarithms are clamped at `ln(f64::MIN_POSITIVE)`, so absorption into a
/// superattracting cycle shows up as a large negative value. Landing exactly
/// on a critical point that is not itself periodic is an error.
pub fn lyapunov_exponent(map: &RationalMap, z0: SpherePoint, budget: usize, burn_in: usize) -> Result<f64> {
    if budget <= burn_in {
        return Err(DynError::InvalidArgument("budget must exceed burn_in".into()));
    }
    let mut z = z0;
    let mut sum = 0.0;
    let mut checked_critical = false;
    for step in 0..budget {
        if step >= burn_in {
            let s = map.spherical_derivative(z);
            if s == 0.0 && !checked_critical {
                if !is_periodic(map, z, 64) {
                    return Err(DynError::Degenerate {
                        step,
                        point: z.to_string(),
                    });
                }
                checked_critical = true;
            }
            sum += ln_clamped(s);
        }
        z = map.eval(z);
    }
    Ok(sum / (budget - burn_in) as f64)
}

fn is_periodic(map: &RationalMap, z: SpherePoint, max_period: usize) -> bool {
    let mut w = z;
    for _ in 0..max_period {
        w = map.eval(w);
        if spherical_distance(w, z) < LOOP_TOL {
            return true;
        }
    }
    false
}
