//! Lattice invariants and the Weierstrass ℘-function for `Λ = Z + τZ`.
//!
//! Two independent evaluators:
//! - a fast one (Eisenstein q-series for `g2`, `g3` and a `csc²` series for
//!   ℘) after reducing `τ` to the standard fundamental domain;
//! - the direct symmetric lattice sum over `max(|m|, |n|) <= N`, completed by
//!   a fitted tail (see [`shell_tail`]).

use crate::error::{DynError, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
/// Arguments closer than this to a lattice point are rejected as poles.
pub const POLE_TOL: f64 = 1e-8;

/// Default truncation `N` of the direct sums.
pub const DEFAULT_TRUNCATION: usize = 100;
/// Smallest truncation accepted by the direct sums.
pub const MIN_TRUNCATION: usize = 50;

/// A lattice `Z + τZ` with its invariants.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    pub tau: C64,
    pub g2: C64,
    pub g3: C64,
    /// Truncation used by the direct-sum cross-checks.
    pub truncation: usize,
    /// `τ` reduced to `|Re| <= 1/2, |τ| >= 1`.
    reduced: C64,
    /// `Λ = scale · (Z + reduced Z)`.
    scale: C64,
}

fn divisor_sum(n: u64, k: u32) -> f64 {
    (1..=n).filter(|d| n % d == 0).map(|d| (d as f64).powi(k as i32)).sum()
}

/// `(E2, E4, E6)` at `τ` from their q-expansions.
pub fn eisenstein(tau: C64) -> (C64, C64, C64) {
    let q = (C64::new(0.0, 2.0 * PI) * tau).exp();
    let (mut s1, mut s3, mut s5) = (ZERO, ZERO, ZERO);
    let mut qn = ONE;
    for n in 1..200u64 {
        qn *= q;
        let t5 = qn * divisor_sum(n, 5);
        s1 += qn * divisor_sum(n, 1);
        s3 += qn * divisor_sum(n, 3);
        s5 += t5;
        if t5.norm() < 1e-18 * (1.0 + s5.norm()) && qn.norm() < 1e-18 {
            break;
        }
    }
    (ONE - 24.0 * s1, ONE + 240.0 * s3, ONE - 504.0 * s5)
}

/// Reduces `τ` by `τ -> τ - round(Re τ)` and `τ -> -1/τ`, returning the
/// reduced `τ` and `μ` with `Z + τZ = μ (Z + τ_r Z)`.
pub fn reduce_tau(tau: C64) -> (C64, C64) {
    let mut t = tau;
    let mut mu = ONE;
    for _ in 0..100 {
        t -= t.re.round();
        if t.norm() < 1.0 - 1e-14 {
            mu *= t;
            t = -t.inv();
        } else {
            break;
        }
    }
    (t, mu)
}

/// `(csc²(πw), cot(πw))`, stable for large `|Im w|`.
fn csc2_cot(w: C64) -> (C64, C64) {
    let i = C64::new(0.0, 1.0);
    if w.im >= 0.0 {
        let u = (2.0 * PI * i * w).exp();
        let d = ONE - u;
        (-4.0 * u / (d * d), -i * (ONE + u) / d)
    } else {
        let u = (-2.0 * PI * i * w).exp();
        let d = ONE - u;
        (-4.0 * u / (d * d), i * (ONE + u) / d)
    }
}

impl Lattice {
    pub fn new(tau: C64) -> Result<Lattice> {
        if tau.im <= 0.0 || !tau.im.is_finite() || !tau.re.is_finite() {
            return Err(DynError::InvalidArgument(format!("need Im(tau) > 0, got {tau}")));
        }
        let (reduced, scale) = reduce_tau(tau);
        let (_, e4, e6) = eisenstein(reduced);
        let g2r = e4 * (4.0 * PI.powi(4) / 3.0);
        let g3r = e6 * (8.0 * PI.powi(6) / 27.0);
        Ok(Lattice {
            tau,
            g2: g2r / scale.powu(4),
            g3: g3r / scale.powu(6),
            truncation: DEFAULT_TRUNCATION,
            reduced,
            scale,
        })
    }

    /// Reduced coordinates `z_r = z/μ` moved into the parallelogram
    /// `a + b τ_r`, `a, b ∈ [-1/2, 1/2]`.
    fn reduce_point(&self, z: C64) -> C64 {
        let zr = z / self.scale;
        let t = self.reduced;
        let b = zr.im / t.im;
        let a = zr.re - b * t.re;
        let (a, b) = (a - a.round(), b - b.round());
        C64::new(a, 0.0) + t * b
    }

    fn check_pole(&self, zr: C64) -> Result<()> {
        let t = self.reduced;
        let dist = [ZERO, ONE, -ONE, t, -t, ONE + t, ONE - t, -ONE + t, -ONE - t]
            .iter()
            .map(|w| (zr - w).norm())
            .fold(f64::INFINITY, f64::min);
        if dist * self.scale.norm() < POLE_TOL {
            return Err(DynError::Pole(format!("{zr} is within {POLE_TOL:e} of a lattice point")));
        }
        Ok(())
    }

    /// `(℘(z), ℘'(z))`.
    pub fn wp_both(&self, z: C64) -> Result<(C64, C64)> {
        let zr = self.reduce_point(z);
        self.check_pole(zr)?;
        let t = self.reduced;
        let (e2, _, _) = eisenstein(t);
        let mut s = ZERO;
        let mut ds = ZERO;
        let (c0, k0) = csc2_cot(zr);
        s += c0;
        ds += c0 * k0;
        for n in 1..64 {
            let (cp, kp) = csc2_cot(zr + t * n as f64);
            let (cm, km) = csc2_cot(zr - t * n as f64);
            s += cp + cm;
            ds += cp * kp + cm * km;
            if (cp.norm() + cm.norm()) < 1e-18 * s.norm() {
                break;
            }
        }
        let pi2 = PI * PI;
        let wp = pi2 * s - pi2 / 3.0 * e2;
        let dwp = -2.0 * PI * pi2 * ds;
        let m = self.scale;
        Ok((wp / (m * m), dwp / (m * m * m)))
    }

    pub fn wp(&self, z: C64) -> Result<C64> {
        self.wp_both(z).map(|v| v.0)
    }

    pub fn wp_prime(&self, z: C64) -> Result<C64> {
        self.wp_both(z).map(|v| v.1)
    }

    /// Invariants recomputed by direct summation at `self.truncation`.
    pub fn direct_invariants(&self) -> Result<DirectInvariants> {
        lattice_invariants(self.tau, self.truncation)
    }

    /// Half periods `1/2, τ/2, (1+τ)/2`.
    pub fn half_periods(&self) -> [C64; 3] {
        [C64::new(0.5, 0.0), self.tau / 2.0, (ONE + self.tau) / 2.0]
    }

    /// `e_k = ℘(half period k)`, the finite critical values of ℘.
    pub fn critical_values(&self) -> Result<[C64; 3]> {
        let h = self.half_periods();
        Ok([self.wp(h[0])?, self.wp(h[1])?, self.wp(h[2])?])
    }

    /// `(℘')² - (4℘³ - g2 ℘ - g3)` at `z`.
    pub fn ode_residual(&self, z: C64) -> Result<C64> {
        let (p, dp) = self.wp_both(z)?;
        Ok(dp * dp - (4.0 * p * p * p - self.g2 * p - self.g3))
    }
}

/// `Σ_{k >= a} k^-s` by Euler–Maclaurin (accurate for `a >= 20`).
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    // sum a few terms explicitly, then the asymptotic expansion
    let mut sum = 0.0;
    let mut k = a;
    while k < 20.0 {
        sum += k.powf(-s);
        k += 1.0;
    }
    let b = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0];
    let mut tail = k.powf(1.0 - s) / (s - 1.0) + 0.5 * k.powf(-s);
    let mut rising = s; // s (s+1) ... (s+2j-2)
    let mut fact = 2.0; // (2j)!
    for (j, bj) in b.iter().enumerate() {
        let j = j + 1;
        tail += bj / fact * rising * k.powf(-s - 2.0 * j as f64 + 1.0);
        rising *= (s + 2.0 * j as f64 - 1.0) * (s + 2.0 * j as f64);
        fact *= ((2 * j + 1) * (2 * j + 2)) as f64;
    }
    sum + tail
}

/// Sum over the square shell `max(|m|, |n|) = k` of `f(m + nτ)`.
fn shell_sum(tau: C64, k: i64, f: &impl Fn(C64) -> C64) -> C64 {
    let mut s = ZERO;
    for n in -k..=k {
        let y = tau * n as f64;
        s += f(y + k as f64) + f(y - k as f64);
    }
    for m in (-k + 1)..k {
        let x = C64::new(m as f64, 0.0);
        s += f(x + tau * k as f64) + f(x - tau * k as f64);
    }
    s
}

/// Direct symmetric sum with tail estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShellSum {
    /// Partial sum plus fitted tail.
    pub value: C64,
    /// Raw partial sum over `1 <= k <= N`.
    pub partial: C64,
    /// The fitted tail `value - partial`.
    pub tail: C64,
}

/// Sums `f` over nonzero lattice points with `max(|m|,|n|) <= n_max`.
///
/// The shell sums behave like `A k^-(p-1) + B k^-(p+1) + C k^-(p+3)` for a
/// summand homogeneous of degree `-p` at infinity (even `p`); `A, B, C` are
/// fitted on the last three shells and the remainder of the series is added
/// in closed form.
pub fn shell_tail(tau: C64, n_max: usize, p: u32, f: impl Fn(C64) -> C64) -> ShellSum {
    let n = n_max as i64;
    let shells: Vec<C64> = (1..=n).map(|k| shell_sum(tau, k, &f)).collect();
    let partial = crate::par::tree_sum(&shells.iter().map(|c| c.re).collect::<Vec<_>>());
    let partial_im = crate::par::tree_sum(&shells.iter().map(|c| c.im).collect::<Vec<_>>());
    let partial = C64::new(partial, partial_im);
    let exps = [p as f64 - 1.0, p as f64 + 1.0, p as f64 + 3.0];
    let ks = [n - 2, n - 1, n];
    // solve the 3x3 system for A, B, C
    let mut m = [[0.0f64; 3]; 3];
    for (r, &k) in ks.iter().enumerate() {
        for (c, &e) in exps.iter().enumerate() {
            m[r][c] = (k as f64).powf(-e);
        }
    }
    let rhs = [shells[(n - 3) as usize], shells[(n - 2) as usize], shells[(n - 1) as usize]];
    let coef = solve3(m, rhs);
    let tail = exps
        .iter()
        .zip(coef.iter())
        .map(|(&e, &c)| c * hurwitz_zeta(e, (n + 1) as f64))
        .fold(ZERO, |a, b| a + b);
    ShellSum {
        value: partial + tail,
        partial,
        tail,
    }
}

fn solve3(m: [[f64; 3]; 3], rhs: [C64; 3]) -> [C64; 3] {
    // Cramer's rule on a well-scaled copy (columns normalized)
    let scale: Vec<f64> = (0..3).map(|c| m[2][c]).collect();
    let a: Vec<Vec<f64>> = (0..3).map(|r| (0..3).map(|c| m[r][c] / scale[c]).collect()).collect();
    let det = |a: &Vec<Vec<f64>>| {
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    };
    let d = det(&a);
    let mut out = [ZERO; 3];
    for c in 0..3 {
        let mut re = a.clone();
        let mut im = a.clone();
        for r in 0..3 {
            re[r][c] = rhs[r].re;
            im[r][c] = rhs[r].im;
        }
        out[c] = C64::new(det(&re) / d, det(&im) / d) / scale[c];
    }
    out
}

/// Invariants by direct summation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectInvariants {
    pub g2: C64,
    pub g3: C64,
    pub truncation: usize,
    /// Magnitudes of the fitted tails added to the raw partial sums.
    pub tail_g2: f64,
    pub tail_g3: f64,
}

/// `g2 = 60 Σ' ω^-4`, `g3 = 140 Σ' ω^-6` over `max(|m|,|n|) <= n`.
pub fn lattice_invariants(tau: C64, n: usize) -> Result<DirectInvariants> {
    if tau.im <= 0.0 {
        return Err(DynError::InvalidArgument(format!("need Im(tau) > 0, got {tau}")));
    }
    if n < MIN_TRUNCATION {
        return Err(DynError::InvalidArgument(format!("truncation must be at least {MIN_TRUNCATION}")));
    }
    let s4 = shell_tail(tau, n, 4, |w| (w * w).inv().powu(2));
    let s6 = shell_tail(tau, n, 6, |w| (w * w * w).inv().powu(2));
    Ok(DirectInvariants {
        g2: 60.0 * s4.value,
        g3: 140.0 * s6.value,
        truncation: n,
        tail_g2: 60.0 * s4.tail.norm(),
        tail_g3: 140.0 * s6.tail.norm(),
    })
}

/// `(℘(z), ℘'(z))` by direct summation (no argument reduction beyond
/// moving `z` into the parallelogram around 0).
pub fn wp_direct(z: C64, tau: C64, n: usize) -> Result<(C64, C64)> {
    let b = z.im / tau.im;
    let a = z.re - b * tau.re;
    let zr = C64::new(a - a.round(), 0.0) + tau * (b - b.round());
    if zr.norm() < POLE_TOL {
        return Err(DynError::Pole(format!("{z} is a lattice point")));
    }
    let p = shell_tail(tau, n, 4, |w| (zr - w).powi(-2) - w.powi(-2));
    let dp = shell_tail(tau, n, 4, |w| (zr - w).powi(-3));
    Ok((zr.powi(-2) + p.value, -2.0 * (zr.powi(-3) + dp.value)))
}
