//! Dense complex polynomials and the Aberth simultaneous root solver.
//!
//! Coefficients are stored highest degree first: `[a0, a1, ..., an]` means
//! `a0 z^n + a1 z^(n-1) + ... + an`.

use crate::error::{DynError, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

type C64 = Complex64;

const EPS: f64 = f64::EPSILON;
const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Aberth convergence tolerance on the relative Newton correction.
pub const ROOT_TOL: f64 = 1e-12;
/// Sweep cap for the Aberth iteration.
pub const MAX_SWEEPS: usize = 500;
/// Roots closer than this (relative to `max(1, |r|)`) are merged.
pub const CLUSTER_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    coeffs: Vec<C64>,
}

impl Poly {
    /// Builds a polynomial, dropping exactly-zero leading coefficients.
    pub fn new(coeffs: Vec<C64>) -> Self {
        let first = coeffs.iter().position(|c| *c != ZERO);
        match first {
            Some(k) => Poly {
                coeffs: coeffs[k..].to_vec(),
            },
            None => Poly { coeffs: vec![ZERO] },
        }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Poly::new(coeffs.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn constant(c: C64) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Poly { coeffs: vec![ONE, ZERO] }
    }

    /// `prod (z - r)`.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut p = Poly::constant(ONE);
        for &r in roots {
            p = p.mul(&Poly { coeffs: vec![ONE, -r] });
        }
        p
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == ZERO
    }

    pub fn leading(&self) -> C64 {
        self.coeffs[0]
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Coefficients padded with leading zeros to nominal degree `d`.
    pub fn padded(&self, d: usize) -> Vec<C64> {
        let n = self.degree();
        assert!(d >= n || self.is_zero());
        let mut v = vec![ZERO; d + 1 - self.coeffs.len().min(d + 1)];
        v.extend_from_slice(&self.coeffs[self.coeffs.len().saturating_sub(d + 1)..]);
        v
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().fold(ZERO, |acc, &a| acc * z + a)
    }

    /// Value and first derivative by Horner's scheme.
    pub fn eval_d(&self, z: C64) -> (C64, C64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for &a in &self.coeffs {
            dp = dp * z + p;
            p = p * z + a;
        }
        (p, dp)
    }

    /// Value, derivative and a rounding-error bound for the value.
    fn eval_bounded(coeffs: &[C64], z: C64) -> (C64, C64, f64) {
        let az = z.norm();
        let mut p = ZERO;
        let mut dp = ZERO;
        let mut mu = 0.0;
        for &a in coeffs {
            dp = dp * z + p;
            p = p * z + a;
            mu = mu * az + p.norm();
        }
        (p, dp, 4.0 * EPS * mu)
    }

    pub fn derivative(&self) -> Poly {
        let n = self.degree();
        if n == 0 {
            return Poly::constant(ZERO);
        }
        Poly::new(
            self.coeffs[..n]
                .iter()
                .enumerate()
                .map(|(k, &a)| a * (n - k) as f64)
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let d = self.degree().max(other.degree());
        let a = self.padded(d);
        let b = other.padded(d);
        Poly::new(a.iter().zip(&b).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(-ONE))
    }

    pub fn scale(&self, s: C64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| a * s).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut out = Poly::constant(ONE);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `self(inner(z))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .fold(Poly::constant(ZERO), |acc, &a| acc.mul(inner).add(&Poly::constant(a)))
    }

    /// Synthetic division by `(z - r)`; the remainder is discarded.
    pub fn deflate(&self, r: C64) -> Poly {
        let n = self.degree();
        if n == 0 {
            return self.clone();
        }
        let mut out = Vec::with_capacity(n);
        let mut acc = ZERO;
        for &a in &self.coeffs[..n] {
            acc = acc * r + a;
            out.push(acc);
        }
        Poly::new(out)
    }

    /// Drops leading coefficients below `rel * max|coeff|`.
    pub fn trim_relative(&self, rel: f64) -> Poly {
        let m = self.max_abs_coeff();
        let k = self
            .coeffs
            .iter()
            .position(|c| c.norm() > rel * m)
            .unwrap_or(self.coeffs.len() - 1);
        Poly::new(self.coeffs[k..].to_vec())
    }

    pub fn roots(&self) -> Result<PolyRootResult> {
        poly_roots(&self.coeffs)
    }
}

/// One Newton evaluation inside the Aberth iteration.
#[derive(Clone, Copy, Debug)]
pub struct NewtonStep {
    /// `p(z) / p'(z)`.
    pub ratio: C64,
    /// `|p(z)|` is at or below its rounding-error level.
    pub at_noise: bool,
    /// A scale-free residual, used to report solver quality.
    pub residual: f64,
}

/// Anything whose roots the Aberth solver can find: a fixed number of roots
/// and a Newton step at any finite point.
pub trait RootSystem: Sync {
    fn degree(&self) -> usize;
    fn newton(&self, z: C64) -> NewtonStep;
    /// Radius of the circle holding the initial guesses.
    fn initial_radius(&self) -> f64 {
        1.0
    }
}

/// Coefficient polynomial as a root system, with a reversed-Horner branch
/// for `|z| > 1` so large arguments never overflow.
struct CoeffSystem<'a> {
    coeffs: &'a [C64],
    reversed: Vec<C64>,
    scale: f64,
}

impl<'a> CoeffSystem<'a> {
    fn new(coeffs: &'a [C64]) -> Self {
        let mut reversed = coeffs.to_vec();
        reversed.reverse();
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        CoeffSystem {
            coeffs,
            reversed,
            scale,
        }
    }
}

impl RootSystem for CoeffSystem<'_> {
    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn newton(&self, z: C64) -> NewtonStep {
        let n = self.degree() as f64;
        if z.norm() <= 1.0 {
            let (p, dp, bound) = Poly::eval_bounded(self.coeffs, z);
            NewtonStep {
                ratio: p / dp,
                at_noise: p.norm() <= bound,
                residual: p.norm() / self.scale,
            }
        } else {
            // p(z) = z^n q(1/z), so p/p' = z / (n - w q'(w)/q(w))
            let w = z.inv();
            let (q, dq, bound) = Poly::eval_bounded(&self.reversed, w);
            NewtonStep {
                ratio: z / (n - w * dq / q),
                at_noise: q.norm() <= bound,
                residual: q.norm() / self.scale,
            }
        }
    }

    fn initial_radius(&self) -> f64 {
        let a0 = self.coeffs[0].norm();
        1.0 + self.coeffs[1..]
            .iter()
            .map(|c| c.norm() / a0)
            .fold(0.0, f64::max)
    }
}

/// Roots with multiplicities plus the largest residual seen at the roots.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRootResult {
    pub roots: Vec<(C64, usize)>,
    pub residual: f64,
}

impl PolyRootResult {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.1).sum()
    }

    /// Every root repeated by multiplicity.
    pub fn flat(&self) -> Vec<C64> {
        self.roots
            .iter()
            .flat_map(|&(r, m)| std::iter::repeat_n(r, m))
            .collect()
    }
}

/// All roots of a polynomial given highest-degree-first coefficients.
pub fn poly_roots(coeffs: &[C64]) -> Result<PolyRootResult> {
    let p = Poly::new(coeffs.to_vec());
    let n = p.degree();
    if n == 0 {
        return Err(DynError::InvalidArgument(
            "polynomial of degree 0 has no roots".into(),
        ));
    }
    // exact zero roots are split off first
    let zeros = p.coeffs.iter().rev().take_while(|c| **c == ZERO).count();
    let core = &p.coeffs[..p.coeffs.len() - zeros];
    let mut flat = vec![ZERO; zeros];
    let mut residual = 0.0;
    if core.len() > 1 {
        let sys = CoeffSystem::new(core);
        let (r, res) = aberth(&sys)?;
        flat.extend(r);
        residual = res;
    }
    Ok(PolyRootResult {
        roots: cluster(&flat, CLUSTER_TOL),
        residual,
    })
}

/// Aberth–Ehrlich iteration with Gauss–Seidel updates.
///
/// Returns the raw roots (not clustered) and the largest residual.
pub fn aberth<S: RootSystem + ?Sized>(sys: &S) -> Result<(Vec<C64>, f64)> {
    let n = sys.degree();
    if n == 0 {
        return Ok((Vec::new(), 0.0));
    }
    let r0 = sys.initial_radius();
    let offset = 0.4;
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(r0, TAU * k as f64 / n as f64 + offset))
        .collect();
    let mut frozen = vec![false; n];
    let mut residual = vec![f64::INFINITY; n];

    for _ in 0..MAX_SWEEPS {
        let mut active = false;
        for k in 0..n {
            if frozen[k] {
                continue;
            }
            let step = sys.newton(z[k]);
            residual[k] = step.residual;
            if step.at_noise || !step.ratio.re.is_finite() || !step.ratio.im.is_finite() {
                frozen[k] = true;
                continue;
            }
            let w = step.ratio;
            let mut s = ZERO;
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d != ZERO {
                        s += d.inv();
                    }
                }
            }
            let corr = w / (ONE - w * s);
            let corr = if corr.re.is_finite() && corr.im.is_finite() {
                corr
            } else {
                w
            };
            z[k] -= corr;
            if corr.norm() <= ROOT_TOL * z[k].norm().max(1.0) {
                frozen[k] = true;
                residual[k] = sys.newton(z[k]).residual;
            } else {
                active = true;
            }
        }
        if !active {
            let worst = residual.iter().cloned().fold(0.0, f64::max);
            return Ok((z, worst));
        }
    }
    let worst = z
        .iter()
        .map(|&r| sys.newton(r).residual)
        .fold(0.0, f64::max);
    Err(DynError::RootSolver {
        sweeps: MAX_SWEEPS,
        residual: worst,
    })
}

/// Greedy agglomeration: a root joins the first cluster whose running mean
/// lies within `tol * max(1, |r|)`.
pub fn cluster(roots: &[C64], tol: f64) -> Vec<(C64, usize)> {
    let mut sums: Vec<(C64, usize)> = Vec::new();
    for &r in roots {
        let hit = sums.iter_mut().find(|(s, m)| {
            let mean = *s / *m as f64;
            (mean - r).norm() <= tol * r.norm().max(1.0)
        });
        match hit {
            Some((s, m)) => {
                *s += r;
                *m += 1;
            }
            None => sums.push((r, 1)),
        }
    }
    sums.into_iter().map(|(s, m)| (s / m as f64, m)).collect()
}
