//! Rational maps `f = P/Q` of the Riemann sphere.
//!
//! A map of degree `d` is stored as a pair of homogeneous forms
//! `P(x, y) = sum p_j x^(d-j) y^j`, `Q(x, y) = sum q_j x^(d-j) y^j`
//! (coefficients highest degree first, padded to length `d + 1`). Evaluation
//! uses the chart `(z, 1)` for `|z| <= 1` and `(1, 1/z)` otherwise, so there
//! is no large-number threshold anywhere.

use crate::error::{DynError, Result};
use crate::poly::{cluster, poly_roots, Poly, CLUSTER_TOL};
use crate::sphere::{Chart, Rotation, SpherePoint};
use num_complex::Complex64;

type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Relative tolerance for matching roots of P and Q when cancelling common
/// factors.
pub const COPRIME_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    p: Poly,
    q: Poly,
    hp: Vec<C64>,
    hq: Vec<C64>,
    hp_rev: Vec<C64>,
    hq_rev: Vec<C64>,
    d: usize,
}

/// Homogeneous values `(a, b)` of the map in a chart, with their derivatives
/// with respect to the chart coordinate.
#[derive(Clone, Copy, Debug)]
pub struct ChartValue {
    pub a: C64,
    pub b: C64,
    pub da: C64,
    pub db: C64,
}

impl ChartValue {
    /// Wronskian `a' b - a b'`.
    pub fn wronskian(&self) -> C64 {
        self.da * self.b - self.a * self.db
    }

    pub fn point(&self) -> SpherePoint {
        SpherePoint::from_homogeneous(self.a, self.b)
    }

    /// Derivative of the image coordinate in its own chart.
    pub fn local_derivative(&self, out: Chart) -> C64 {
        let w = self.wronskian();
        match out {
            Chart::Origin => w / (self.b * self.b),
            Chart::Infinity => -w / (self.a * self.a),
        }
    }

    pub fn output_chart(&self) -> Chart {
        if self.a.norm() <= self.b.norm() {
            Chart::Origin
        } else {
            Chart::Infinity
        }
    }
}

fn horner_d(coeffs: &[C64], z: C64) -> (C64, C64) {
    let mut p = ZERO;
    let mut dp = ZERO;
    for &a in coeffs {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

impl RationalMap {
    /// Builds `P/Q`, cancelling common roots (matched to [`COPRIME_TOL`]).
    pub fn new(p: Poly, q: Poly) -> Result<Self> {
        if p.is_zero() {
            return Err(DynError::DegenerateMap("numerator is zero".into()));
        }
        if q.is_zero() {
            return Err(DynError::DegenerateMap("denominator is zero".into()));
        }
        let (p, q) = cancel_common(p, q)?;
        let d = p.degree().max(q.degree());
        if d == 0 {
            return Err(DynError::DegenerateMap("constant map".into()));
        }
        Ok(Self::assemble(p, q, d))
    }

    /// A map from homogeneous coefficient vectors of equal length `d + 1`.
    ///
    /// No common-factor check is made; use for maps coprime by construction
    /// (compositions and conjugates of valid maps).
    pub fn from_homogeneous(hp: Vec<C64>, hq: Vec<C64>) -> Result<Self> {
        if hp.len() != hq.len() || hp.len() < 2 {
            return Err(DynError::InvalidArgument(
                "homogeneous forms must have equal length >= 2".into(),
            ));
        }
        let d = hp.len() - 1;
        if hp[0] == ZERO && hq[0] == ZERO {
            return Err(DynError::DegenerateMap("both forms vanish at infinity".into()));
        }
        let p = Poly::new(hp);
        let q = Poly::new(hq);
        if p.is_zero() || q.is_zero() {
            return Err(DynError::DegenerateMap("zero form".into()));
        }
        Ok(Self::assemble(p, q, d))
    }

    fn assemble(p: Poly, q: Poly, d: usize) -> Self {
        let hp = p.padded(d);
        let hq = q.padded(d);
        let mut hp_rev = hp.clone();
        hp_rev.reverse();
        let mut hq_rev = hq.clone();
        hq_rev.reverse();
        RationalMap {
            p,
            q,
            hp,
            hq,
            hp_rev,
            hq_rev,
            d,
        }
    }

    pub fn polynomial(p: Poly) -> Result<Self> {
        Self::new(p, Poly::constant(ONE))
    }

    /// `z^2 + c`.
    pub fn quadratic(c: C64) -> Self {
        Self::assemble(Poly::new(vec![ONE, ZERO, c]), Poly::constant(ONE), 2)
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn numerator(&self) -> &Poly {
        &self.p
    }

    pub fn denominator(&self) -> &Poly {
        &self.q
    }

    pub fn homogeneous(&self) -> (&[C64], &[C64]) {
        (&self.hp, &self.hq)
    }

    pub fn is_polynomial(&self) -> bool {
        self.q.degree() == 0
    }

    /// `Some(c)` when the map is exactly `z^2 + c`.
    pub fn as_quadratic(&self) -> Option<C64> {
        let c = self.p.coeffs();
        if self.is_polynomial() && self.d == 2 && c[1] == ZERO {
            let q0 = self.q.leading();
            if c[0] == q0 {
                return Some(c[2] / q0);
            }
        }
        None
    }

    /// Homogeneous values and derivatives in the given input chart.
    #[inline]
    pub fn chart_eval(&self, chart: Chart, u: C64) -> ChartValue {
        let (cp, cq) = match chart {
            Chart::Origin => (&self.hp, &self.hq),
            Chart::Infinity => (&self.hp_rev, &self.hq_rev),
        };
        let (a, da) = horner_d(cp, u);
        let (b, db) = horner_d(cq, u);
        ChartValue { a, b, da, db }
    }

    /// Raw homogeneous image of `(x, y)`.
    pub fn eval_h(&self, x: C64, y: C64) -> (C64, C64) {
        if x.norm() <= y.norm() {
            let u = x / y;
            let s = y.powu(self.d as u32);
            let v = self.chart_eval(Chart::Origin, u);
            (v.a * s, v.b * s)
        } else {
            let u = y / x;
            let s = x.powu(self.d as u32);
            let v = self.chart_eval(Chart::Infinity, u);
            (v.a * s, v.b * s)
        }
    }

    pub fn eval(&self, z: SpherePoint) -> SpherePoint {
        let (chart, u) = z.chart();
        self.chart_eval(chart, u).point()
    }

    pub fn eval_c(&self, z: C64) -> SpherePoint {
        self.eval(SpherePoint::Finite(z))
    }

    /// Derivative at `z` expressed in the standard charts of `z` and `f(z)`,
    /// with the charts used.
    pub fn local_derivative(&self, z: SpherePoint) -> (C64, Chart, Chart) {
        let (cin, u) = z.chart();
        let v = self.chart_eval(cin, u);
        let cout = v.output_chart();
        (v.local_derivative(cout), cin, cout)
    }

    /// Spherical norm of the derivative, `|f'(z)| (1+|z|^2) / (1+|f(z)|^2)`.
    pub fn spherical_derivative(&self, z: SpherePoint) -> f64 {
        let (chart, u) = z.chart();
        let v = self.chart_eval(chart, u);
        v.wronskian().norm() * (1.0 + u.norm_sqr()) / (v.a.norm_sqr() + v.b.norm_sqr())
    }

    /// Ordinary derivative `f'(z)` at a finite point that is not a pole.
    pub fn derivative(&self, z: C64) -> C64 {
        let (p, dp) = self.p.eval_d(z);
        let (q, dq) = self.q.eval_d(z);
        (dp * q - p * dq) / (q * q)
    }

    /// Critical points with multiplicity; the total is always `2d - 2`.
    pub fn critical_points(&self) -> Result<Vec<(SpherePoint, usize)>> {
        if self.d < 2 {
            return Ok(Vec::new());
        }
        let w = self
            .p
            .derivative()
            .mul(&self.q)
            .sub(&self.p.mul(&self.q.derivative()))
            .trim_relative(1e-14);
        let total = 2 * self.d - 2;
        let mut out: Vec<(SpherePoint, usize)> = Vec::new();
        if w.degree() >= 1 {
            let res = poly_roots(w.coeffs())?;
            out.extend(res.roots.into_iter().map(|(r, m)| (SpherePoint::Finite(r), m)));
        }
        let finite: usize = out.iter().map(|x| x.1).sum();
        if finite < total {
            out.push((SpherePoint::Infinity, total - finite));
        }
        Ok(out)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        let gp = Poly::new(inner.hp.clone());
        let gq = Poly::new(inner.hq.clone());
        let d = self.d;
        let pp: Vec<Poly> = (0..=d).map(|k| gp.pow(k)).collect();
        let qp: Vec<Poly> = (0..=d).map(|k| gq.pow(k)).collect();
        let mut np = Poly::constant(ZERO);
        let mut nq = Poly::constant(ZERO);
        for j in 0..=d {
            let term = pp[d - j].mul(&qp[j]);
            np = np.add(&term.scale(self.hp[j]));
            nq = nq.add(&term.scale(self.hq[j]));
        }
        let dd = d * inner.d;
        RationalMap::from_homogeneous(np.padded(dd), nq.padded(dd))
    }

    /// `R^-1 ∘ f ∘ R`.
    pub fn conjugate(&self, rot: &Rotation) -> Result<RationalMap> {
        let x = Poly::new(vec![rot.a, rot.b]);
        let y = Poly::new(vec![-rot.b.conj(), rot.a.conj()]);
        let d = self.d;
        let mut fp = Poly::constant(ZERO);
        let mut fq = Poly::constant(ZERO);
        for j in 0..=d {
            let term = x.pow(d - j).mul(&y.pow(j));
            fp = fp.add(&term.scale(self.hp[j]));
            fq = fq.add(&term.scale(self.hq[j]));
        }
        let inv = rot.inverse();
        let np = fp.scale(inv.a).add(&fq.scale(inv.b));
        let nq = fp.scale(-inv.b.conj()).add(&fq.scale(inv.a.conj()));
        RationalMap::from_homogeneous(np.padded(d), nq.padded(d))
    }

    /// Radius beyond which every orbit of a polynomial escapes to infinity:
    /// `|z| > R` implies `|f(z)| >= 2|z|`. `None` for non-polynomials.
    pub fn escape_radius(&self) -> Option<f64> {
        if !self.is_polynomial() || self.d < 2 {
            return None;
        }
        if let Some(c) = self.as_quadratic() {
            return Some(c.norm().max(2.0));
        }
        let q0 = self.q.leading();
        let coeffs: Vec<C64> = self.p.coeffs().iter().map(|a| a / q0).collect();
        let a0 = coeffs[0].norm();
        let s: f64 = coeffs[1..].iter().map(|a| a.norm()).sum();
        let r = 1.0f64
            .max(2.0 * s / a0)
            .max((4.0 / a0).powf(1.0 / (self.d as f64 - 1.0)));
        Some(r)
    }

    /// Finite solutions of `f(z) = w` with multiplicity, plus infinity when
    /// it is a preimage.
    pub fn preimages(&self, w: SpherePoint) -> Result<Vec<(SpherePoint, usize)>> {
        // solve b P(z) - a Q(z) = 0 for w = a/b
        let (a, b) = match w {
            SpherePoint::Finite(z) if z.norm() <= 1.0 => (z, ONE),
            SpherePoint::Finite(z) => (ONE, z.inv()),
            SpherePoint::Infinity => (ONE, ZERO),
        };
        let eq: Vec<C64> = self
            .hp
            .iter()
            .zip(&self.hq)
            .map(|(&p, &q)| b * p - a * q)
            .collect();
        let poly = Poly::new(eq).trim_relative(1e-15);
        let mut out = Vec::new();
        if poly.degree() >= 1 {
            let res = poly_roots(poly.coeffs())?;
            out.extend(res.roots.into_iter().map(|(r, m)| (SpherePoint::Finite(r), m)));
        }
        let finite: usize = out.iter().map(|x| x.1).sum();
        if finite < self.d {
            out.push((SpherePoint::Infinity, self.d - finite));
        }
        Ok(out)
    }
}

fn cancel_common(mut p: Poly, mut q: Poly) -> Result<(Poly, Poly)> {
    if p.degree() == 0 || q.degree() == 0 {
        return Ok((p, q));
    }
    let rp = poly_roots(p.coeffs())?.flat();
    let rq = poly_roots(q.coeffs())?.flat();
    let mut used = vec![false; rq.len()];
    let mut common = Vec::new();
    for &r in &rp {
        let hit = rq.iter().enumerate().position(|(j, &s)| {
            !used[j] && (r - s).norm() <= COPRIME_TOL * r.norm().max(s.norm()).max(1.0)
        });
        if let Some(j) = hit {
            used[j] = true;
            common.push(0.5 * (r + rq[j]));
        }
    }
    // exact zeros deflate exactly; others at the matched average
    for r in cluster(&common, CLUSTER_TOL).into_iter().flat_map(|(r, m)| std::iter::repeat_n(r, m)) {
        p = p.deflate(r);
        q = q.deflate(r);
    }
    Ok((p, q))
}
