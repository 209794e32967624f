//! Points of the Riemann sphere, the spherical metric, and sphere rotations.

use num_complex::Complex64;
use std::fmt;

/// Default tolerance for point equality (spherical distance).
pub const POINT_TOL: f64 = 1e-9;

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

/// Which of the two standard coordinate charts a point is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// `u = z`, used for `|z| <= 1`.
    Origin,
    /// `u = 1/z`, used for `|z| > 1` and for infinity.
    Infinity,
}

impl SpherePoint {
    pub fn new(re: f64, im: f64) -> Self {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn finite(&self) -> Option<Complex64> {
        match *self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    /// The point `a/b` given homogeneous coordinates.
    ///
    /// `b == 0` (or a quotient that overflows) is infinity.
    pub fn from_homogeneous(a: Complex64, b: Complex64) -> Self {
        if b == Complex64::new(0.0, 0.0) {
            return SpherePoint::Infinity;
        }
        let z = a / b;
        if z.re.is_finite() && z.im.is_finite() {
            SpherePoint::Finite(z)
        } else {
            SpherePoint::Infinity
        }
    }

    /// The chart this point is expressed in, with its local coordinate.
    pub fn chart(&self) -> (Chart, Complex64) {
        match *self {
            SpherePoint::Finite(z) if z.norm() <= 1.0 => (Chart::Origin, z),
            SpherePoint::Finite(z) => (Chart::Infinity, z.inv()),
            SpherePoint::Infinity => (Chart::Infinity, Complex64::new(0.0, 0.0)),
        }
    }

    /// Inverse of [`SpherePoint::chart`].
    pub fn from_chart(chart: Chart, u: Complex64) -> Self {
        match chart {
            Chart::Origin => SpherePoint::Finite(u),
            Chart::Infinity => SpherePoint::from_homogeneous(Complex64::new(1.0, 0.0), u),
        }
    }

    /// Unit vector under inverse stereographic projection; infinity is the
    /// north pole `(0, 0, 1)`.
    pub fn to_unit_vector(&self) -> [f64; 3] {
        match *self {
            SpherePoint::Infinity => [0.0, 0.0, 1.0],
            SpherePoint::Finite(z) => {
                let r2 = z.norm_sqr();
                if r2 > 1.0 {
                    // w = 1/z keeps everything bounded near the pole
                    let w = z.inv();
                    let s2 = w.norm_sqr();
                    let d = 1.0 + s2;
                    [2.0 * w.re / d, -2.0 * w.im / d, (1.0 - s2) / d]
                } else {
                    let d = 1.0 + r2;
                    [2.0 * z.re / d, 2.0 * z.im / d, (r2 - 1.0) / d]
                }
            }
        }
    }

    pub fn from_unit_vector(v: [f64; 3]) -> Self {
        let [x, y, z] = v;
        if z >= 0.0 {
            // (x + iy)/(1 - z), computed as (1 + z)/(x - iy) when z is near 1
            let den = Complex64::new(x, -y);
            SpherePoint::from_homogeneous(Complex64::new(1.0 + z, 0.0), den)
        } else {
            SpherePoint::Finite(Complex64::new(x, y) / (1.0 - z))
        }
    }

    pub fn approx_eq(&self, other: &SpherePoint, tol: f64) -> bool {
        spherical_distance(*self, *other) < tol
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::Finite(z)
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Infinity => write!(f, "inf"),
            SpherePoint::Finite(z) => {
                if z.im < 0.0 {
                    write!(f, "{}-{}i", z.re, -z.im)
                } else {
                    write!(f, "{}+{}i", z.re, z.im)
                }
            }
        }
    }
}

/// Great-circle distance on the unit sphere, in `[0, pi]`.
///
/// Uses `tan(d/2) = |z - w| / |1 + conj(z) w|`, evaluated in whichever chart
/// keeps the operands bounded.
pub fn spherical_distance(p: SpherePoint, q: SpherePoint) -> f64 {
    use SpherePoint::*;
    match (p, q) {
        (Infinity, Infinity) => 0.0,
        (Finite(z), Infinity) | (Infinity, Finite(z)) => 2.0 * 1.0f64.atan2(z.norm()),
        (Finite(z), Finite(w)) => {
            let (nz, nw) = (z.norm(), w.norm());
            if nz > 1.0 && nw > 1.0 {
                // z -> 1/z is an isometry (rotation by pi about the real axis)
                let (a, b) = (z.inv(), w.inv());
                2.0 * (a - b).norm().atan2((1.0 + a.conj() * b).norm())
            } else if nz > 1.0 {
                let num = (1.0 - w / z).norm();
                let den = (z.conj().inv() + w).norm();
                2.0 * num.atan2(den)
            } else if nw > 1.0 {
                let num = (1.0 - z / w).norm();
                let den = (w.conj().inv() + z).norm();
                2.0 * num.atan2(den)
            } else {
                2.0 * (z - w).norm().atan2((1.0 + z.conj() * w).norm())
            }
        }
    }
}

/// A rotation of the sphere, `z -> (a z + b) / (-conj(b) z + conj(a))` with
/// `|a|^2 + |b|^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation {
    pub a: Complex64,
    pub b: Complex64,
}

impl Rotation {
    /// Normalizes `(a, b)` onto the unit 3-sphere.
    pub fn new(a: Complex64, b: Complex64) -> Self {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        Rotation { a: a / n, b: b / n }
    }

    pub fn identity() -> Self {
        Rotation {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
        }
    }

    /// A fixed generic rotation used to move periodic points away from the
    /// point at infinity before solving cycle equations.
    pub fn generic() -> Self {
        Rotation::new(Complex64::new(0.96, 0.11), Complex64::new(0.21, 0.14))
    }

    pub fn inverse(&self) -> Self {
        Rotation {
            a: self.a.conj(),
            b: -self.b,
        }
    }

    /// Acts on homogeneous coordinates.
    #[inline]
    pub fn apply_h(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (
            self.a * x + self.b * y,
            -self.b.conj() * x + self.a.conj() * y,
        )
    }

    pub fn apply(&self, p: SpherePoint) -> SpherePoint {
        let (x, y) = match p {
            SpherePoint::Finite(z) if z.norm() <= 1.0 => (z, Complex64::new(1.0, 0.0)),
            SpherePoint::Finite(z) => (Complex64::new(1.0, 0.0), z.inv()),
            SpherePoint::Infinity => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        };
        let (u, v) = self.apply_h(x, y);
        SpherePoint::from_homogeneous(u, v)
    }
}
