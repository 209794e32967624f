//! External rays and equipotentials of `z² + c` by pulling back the far field.
//!
//! A ray is sampled at the potentials `g_top · 2^(-j/S)`. Vertex `j` of the
//! ray of angle `t` is the preimage of vertex `j - S` of the ray of angle
//! `2t` (or of a far-field point when `j < S`) nearest to vertex `j - 1`.
//! Rays are therefore computed as a chain `t, 2t, 4t, ...` from the deepest
//! link outward.

use super::angle::Angle;
use crate::error::{DynError, Result};
use crate::par::map_slice;
use crate::render::fmt_real;
use num_complex::Complex64;
use std::f64::consts::TAU;

type C64 = Complex64;

/// Radius at which the far-field approximation of the Böttcher map is used.
pub const FAR_RADIUS: f64 = 1e4;
/// Consecutive tail vertices that must agree for a direct landing verdict.
pub const LANDING_VERTICES: usize = 10;
pub const LANDING_TOL: f64 = 1e-6;
pub const DEFAULT_STEPS_PER_HALVING: usize = 8;
/// Above this potential the branch guide comes from the far field.
const GUIDE_POTENTIAL: f64 = 2.0;

/// `log(FAR_RADIUS)`.
pub fn far_potential() -> f64 {
    FAR_RADIUS.ln()
}

/// `φ_c^{-1}` near infinity: `w - c/(2w)` at `w = exp(G + 2πit)`.
pub fn far_field(c: C64, t: f64, g: f64) -> C64 {
    let w = C64::from_polar(g.exp(), TAU * t);
    w - c / (2.0 * w)
}

/// Preimage of `target` under `z² + c` nearest `guide`, or `None` when the
/// guide does not separate the two branches.
pub fn pull_back_checked(c: C64, target: C64, guide: C64) -> Option<C64> {
    let r = (target - c).sqrt();
    let (d1, d2) = ((r - guide).norm(), (-r - guide).norm());
    let (z, d) = if d1 <= d2 { (r, d1) } else { (-r, d2) };
    // a branch jump shows up as a step comparable to the branch separation
    if d < r.norm() || r.norm() == 0.0 && d == 0.0 {
        Some(z)
    } else {
        None
    }
}

/// Sampling schedule shared by every ray and equipotential of one run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RaySchedule {
    pub c: C64,
    pub g_top: f64,
    pub steps: usize,
}

/// Vertices of one ray (possibly cut short).
#[derive(Clone, Debug, PartialEq)]
pub struct RawRay {
    pub vertices: Vec<C64>,
    pub failure: Option<String>,
}

impl RaySchedule {
    pub fn new(c: C64, g_top: f64, steps: usize) -> Result<RaySchedule> {
        if steps == 0 || !(g_top > 0.0) {
            return Err(DynError::InvalidArgument("steps and top potential must be positive".into()));
        }
        Ok(RaySchedule { c, g_top, steps })
    }

    /// Schedule whose top is `level · 2^m` for the least `m` reaching the far
    /// field, so that `level` itself is a sample potential.
    pub fn anchored(c: C64, level: f64, steps: usize) -> Result<RaySchedule> {
        if !(level > 0.0) || !level.is_finite() {
            return Err(DynError::InvalidArgument(format!("potential must be positive, got {level}")));
        }
        let m = (far_potential() / level).log2().ceil().max(0.0);
        RaySchedule::new(c, level * m.exp2(), steps)
    }

    pub fn potential(&self, j: usize) -> f64 {
        self.g_top * (-(j as f64) / self.steps as f64).exp2()
    }

    /// Index of the sample at potential `g` (rounded).
    pub fn index_of(&self, g: f64) -> usize {
        ((self.g_top / g).log2() * self.steps as f64).round().max(0.0) as usize
    }

    /// Vertices `0..=j_max` of the ray of angle `t`.
    pub fn vertices(&self, t: Angle, j_max: usize) -> RawRay {
        let s = self.steps;
        let depth = j_max / s;
        let mut chain = vec![t];
        for _ in 0..depth {
            let next = chain.last().unwrap().double();
            chain.push(next);
        }
        let mut prev: Vec<C64> = Vec::new();
        let mut failure = None;
        for k in (0..=depth).rev() {
            let t_k = chain[k].value();
            let t_next = chain[k].double().value();
            let want = j_max - k * s;
            let avail = if k == depth { want } else { (prev.len() + s).saturating_sub(1).min(want) };
            let mut layer = Vec::with_capacity(avail + 1);
            for j in 0..=avail {
                let target = if j >= s { prev[j - s] } else { far_field(self.c, t_next, 2.0 * self.potential(j)) };
                // far out the steps between vertices are comparable to |z|,
                // so the far field itself is the better guide there
                let g = self.potential(j);
                let guide = if j == 0 || g >= GUIDE_POTENTIAL { far_field(self.c, t_k, g) } else { layer[j - 1] };
                match pull_back_checked(self.c, target, guide) {
                    Some(z) => layer.push(z),
                    None => {
                        failure.get_or_insert_with(|| {
                            format!("branch jump on ray {} at potential {:e}", chain[k], self.potential(j))
                        });
                        break;
                    }
                }
            }
            if layer.is_empty() {
                return RawRay {
                    vertices: layer,
                    failure,
                };
            }
            prev = layer;
        }
        RawRay {
            vertices: prev,
            failure,
        }
    }

    /// The point of the ray `t` at sample potential `self.potential(j)`.
    pub fn point(&self, t: Angle, j: usize) -> Result<C64> {
        let raw = self.vertices(t, j);
        match raw.failure {
            None => Ok(*raw.vertices.last().expect("nonempty without failure")),
            Some(f) => Err(DynError::RayTrace(f)),
        }
    }
}

/// Point of the ray of angle `t` at potential `g`.
pub fn ray_point(c: C64, t: Angle, g: f64, steps: usize) -> Result<C64> {
    if g >= far_potential() {
        return Ok(far_field(c, t.value(), g));
    }
    let sched = RaySchedule::anchored(c, g, steps)?;
    sched.point(t, sched.index_of(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LandingMethod {
    /// The last vertices agree to the landing tolerance.
    Cauchy,
    /// A periodic point refined by Newton from the tail, pulled back along
    /// the preperiodic part of the angle.
    PeriodicRefinement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RayPolyline {
    pub angle: Angle,
    pub vertices: Vec<C64>,
    pub potentials: Vec<f64>,
    pub landing: Option<C64>,
    pub landing_method: Option<LandingMethod>,
    /// Set when tracing stopped early.
    pub failure: Option<String>,
}

impl RayPolyline {
    /// CSV rows `t,G,re,im`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,G,re,im\n");
        for (z, g) in self.vertices.iter().zip(&self.potentials) {
            s.push_str(&format!("{},{},{},{}\n", self.angle, fmt_real(*g), fmt_real(z.re), fmt_real(z.im)));
        }
        s
    }
}

fn quad_iter(c: C64, z: C64, p: usize) -> (C64, C64) {
    let mut z = z;
    let mut d = C64::new(1.0, 0.0);
    for _ in 0..p {
        d *= 2.0 * z;
        z = z * z + c;
    }
    (z, d)
}

/// Newton for `f^p(z) = z`.
fn refine_periodic(c: C64, z0: C64, p: usize) -> Option<C64> {
    let mut z = z0;
    for _ in 0..60 {
        let (w, d) = quad_iter(c, z, p);
        let step = (w - z) / (d - 1.0);
        if !step.re.is_finite() || !step.im.is_finite() {
            return None;
        }
        z -= step;
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            return Some(z);
        }
    }
    None
}

/// Traces the ray of angle `t` from `log(FAR_RADIUS)` down to `g_min`.
pub fn trace_ray(c: C64, t: Angle, g_min: f64, steps: usize) -> Result<RayPolyline> {
    if !(g_min > 0.0) || g_min >= far_potential() {
        return Err(DynError::InvalidArgument(format!("g_min must be in (0, log 1e4), got {g_min}")));
    }
    let sched = RaySchedule::new(c, far_potential(), steps)?;
    trace_with(&sched, t, g_min)
}

/// Traces with a given schedule down to (at least) `g_min`.
pub fn trace_with(sched: &RaySchedule, t: Angle, g_min: f64) -> Result<RayPolyline> {
    let j_max = ((sched.g_top / g_min).log2() * sched.steps as f64).ceil() as usize;
    let raw = sched.vertices(t, j_max);
    let potentials: Vec<f64> = (0..raw.vertices.len()).map(|j| sched.potential(j)).collect();
    let mut ray = RayPolyline {
        angle: t,
        vertices: raw.vertices,
        potentials,
        landing: None,
        landing_method: None,
        failure: raw.failure,
    };
    if ray.failure.is_none() {
        if let Some((z, m)) = detect_landing(sched, &ray, g_min) {
            ray.landing = Some(z);
            ray.landing_method = Some(m);
        }
    }
    Ok(ray)
}

fn detect_landing(sched: &RaySchedule, ray: &RayPolyline, g_min: f64) -> Option<(C64, LandingMethod)> {
    let v = &ray.vertices;
    if v.len() >= LANDING_VERTICES {
        let tail = &v[v.len() - LANDING_VERTICES..];
        let last = *tail.last().unwrap();
        if tail.iter().all(|z| (z - last).norm() <= LANDING_TOL / 2.0) {
            return Some((last, LandingMethod::Cauchy));
        }
    }
    let (pre, per) = ray.angle.orbit_type()?;
    let c = sched.c;
    // the periodic angle reached after `pre` doublings
    let mut s = ray.angle;
    for _ in 0..pre {
        s = s.double();
    }
    let periodic = if pre == 0 { ray.clone() } else { trace_with_plain(sched, s, g_min)? };
    let pv = &periodic.vertices;
    let back = sched.steps * per;
    if pv.len() <= back {
        return None;
    }
    let last = *pv.last().unwrap();
    let spacing = (last - pv[pv.len() - 1 - back]).norm();
    let y = refine_periodic(c, last, per)?;
    if (y - last).norm() > 4.0 * spacing + 1e-12 {
        return None;
    }
    // pull back along the preperiodic part, guided by the images of the tail
    let tail = *v.last()?;
    let mut guides = vec![tail];
    for _ in 1..pre {
        let g = *guides.last().unwrap();
        guides.push(g * g + c);
    }
    let mut z = y;
    for k in (0..pre).rev() {
        z = pull_back_checked(c, z, guides[k]).or_else(|| {
            let r = (z - c).sqrt();
            Some(if (r - guides[k]).norm() <= (-r - guides[k]).norm() { r } else { -r })
        })?;
    }
    Some((z, LandingMethod::PeriodicRefinement))
}

fn trace_with_plain(sched: &RaySchedule, t: Angle, g_min: f64) -> Option<RayPolyline> {
    let j_max = ((sched.g_top / g_min).log2() * sched.steps as f64).ceil() as usize;
    let raw = sched.vertices(t, j_max);
    if raw.failure.is_some() {
        return None;
    }
    Some(RayPolyline {
        angle: t,
        potentials: (0..raw.vertices.len()).map(|j| sched.potential(j)).collect(),
        vertices: raw.vertices,
        landing: None,
        landing_method: None,
        failure: None,
    })
}

/// Rays for several angles, traced in parallel.
pub fn trace_rays(c: C64, angles: &[Angle], g_min: f64, steps: usize) -> Result<Vec<RayPolyline>> {
    map_slice(angles, |&t| trace_ray(c, t, g_min, steps)).into_iter().collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Equipotential {
    pub level: f64,
    /// Points at angles `k/n`, in order; closed implicitly.
    pub points: Vec<C64>,
    /// Indices whose trace failed (their entries are NaN).
    pub failures: Vec<usize>,
}

/// The curve `G = level`, sampled at the angles `k/n`.
pub fn equipotential(c: C64, level: f64, n: usize) -> Result<Equipotential> {
    equipotential_with(c, level, n, DEFAULT_STEPS_PER_HALVING)
}

pub fn equipotential_with(c: C64, level: f64, n: usize, steps: usize) -> Result<Equipotential> {
    if n < 3 {
        return Err(DynError::InvalidArgument("need at least 3 samples".into()));
    }
    let ks: Vec<u64> = (0..n as u64).collect();
    let pts = map_slice(&ks, |&k| {
        let t = Angle::rational(k, n as u64)?;
        ray_point(c, t, level, steps)
    });
    let mut points = Vec::with_capacity(n);
    let mut failures = Vec::new();
    for (i, p) in pts.into_iter().enumerate() {
        match p {
            Ok(z) => points.push(z),
            Err(DynError::RayTrace(_)) => {
                failures.push(i);
                points.push(C64::new(f64::NAN, f64::NAN));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Equipotential { level, points, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn r(p: u64, q: u64) -> Angle {
        Angle::rational(p, q).unwrap()
    }

    #[test]
    fn radial_rays_for_c_zero() {
        let ray = trace_ray(c(0.0, 0.0), r(0, 1), 1e-6, 8).unwrap();
        assert!(ray.failure.is_none());
        for (z, g) in ray.vertices.iter().zip(&ray.potentials) {
            assert!(z.im.abs() < 1e-12);
            assert!((z.re - g.exp()).abs() < 1e-9 * z.re);
        }
        assert!((ray.landing.unwrap() - c(1.0, 0.0)).norm() < 1e-12);
        assert!(ray.potentials.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn sevenths_land_at_alpha_for_c_i() {
        let ci = c(0.0, 1.0);
        let alpha = c(-0.30024259022012607, 0.6248105338438806);
        for t in [r(1, 7), r(2, 7), r(4, 7)] {
            let ray = trace_ray(ci, t, 1e-6, 8).unwrap();
            assert!(ray.failure.is_none(), "{t}");
            let z = ray.landing.expect("lands");
            assert!((z - alpha).norm() < 1e-10, "{t}: {z}");
        }
    }

    #[test]
    fn ray_functional_equation() {
        let ci = c(0.0, 1.0);
        let s = RaySchedule::new(ci, far_potential(), 8).unwrap();
        let a = s.vertices(r(1, 7), 80).vertices;
        let b = s.vertices(r(2, 7), 80).vertices;
        for j in 8..a.len() {
            let img = a[j] * a[j] + ci;
            assert!((img - b[j - 8]).norm() < 1e-9);
        }
    }

    #[test]
    fn equipotential_c_zero_is_circle() {
        let e = equipotential(c(0.0, 0.0), 2f64.ln(), 64).unwrap();
        assert!(e.failures.is_empty());
        for (k, z) in e.points.iter().enumerate() {
            let want = C64::from_polar(2.0, TAU * k as f64 / 64.0);
            assert!((z - want).norm() < 1e-8);
        }
    }

    #[test]
    fn equipotential_maps_to_doubled_level() {
        let ci = c(0.0, 1.0);
        let lo = equipotential(ci, 0.1, 32).unwrap();
        let hi = equipotential(ci, 0.2, 16).unwrap();
        for k in 0..32 {
            let img = lo.points[k] * lo.points[k] + ci;
            assert!((img - hi.points[k % 16]).norm() < 1e-8, "{k}");
        }
    }
}
