//! Lattès maps `f` with `f(℘(z)) = ℘(n z)` for `n = 2^k`.

use super::weierstrass::Lattice;
use crate::error::{DynError, Result};
use crate::poly::Poly;
use crate::rational::RationalMap;
use num_complex::Complex64;

type C64 = Complex64;

/// The duplication map
/// `w -> (6w² - g2/2)² / (4(4w³ - g2 w - g3)) - 2w`
/// written over a common denominator.
pub fn duplication_map(lattice: &Lattice) -> Result<RationalMap> {
    let (g2, g3) = (lattice.g2, lattice.g3);
    let zero = C64::new(0.0, 0.0);
    let num = Poly::new(vec![C64::new(4.0, 0.0), zero, 2.0 * g2, 8.0 * g3, g2 * g2 / 4.0]);
    let den = Poly::new(vec![C64::new(16.0, 0.0), zero, -4.0 * g2, -4.0 * g3]);
    let f = RationalMap::new(num, den)?;
    if f.degree() != 4 {
        return Err(DynError::DegenerateMap(format!(
            "duplication map reduced to degree {} (singular lattice data?)",
            f.degree()
        )));
    }
    Ok(f)
}

/// The Lattès map of multiplier `n = 2^k`, `k >= 1`, of degree `n²`.
pub fn lattes_map(n: u32, lattice: &Lattice) -> Result<RationalMap> {
    if n < 2 || !n.is_power_of_two() {
        return Err(DynError::InvalidArgument(format!("n must be a power of two >= 2, got {n}")));
    }
    let f2 = duplication_map(lattice)?;
    let mut f = f2.clone();
    let mut m = 2;
    while m < n {
        f = f2.compose(&f)?;
        m *= 2;
    }
    let want = (n as usize) * (n as usize);
    if f.degree() != want {
        return Err(DynError::DegenerateMap(format!("expected degree {want}, got {}", f.degree())));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::SpherePoint;

    #[test]
    fn degrees() {
        let l = Lattice::new(C64::new(0.0, 1.0)).unwrap();
        assert_eq!(lattes_map(2, &l).unwrap().degree(), 4);
        assert_eq!(lattes_map(4, &l).unwrap().degree(), 16);
        assert!(lattes_map(3, &l).is_err());
    }

    #[test]
    fn critical_points_count() {
        let l = Lattice::new(C64::new(0.0, 1.0)).unwrap();
        let f = lattes_map(2, &l).unwrap();
        let total: usize = f.critical_points().unwrap().iter().map(|c| c.1).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn singular_values_are_postcritical() {
        // e_k and infinity map to infinity; infinity is fixed
        let l = Lattice::new(C64::new(0.3, 1.2)).unwrap();
        let f = lattes_map(2, &l).unwrap();
        assert_eq!(f.eval(SpherePoint::Infinity), SpherePoint::Infinity);
        for e in l.critical_values().unwrap() {
            assert!(f.eval(SpherePoint::Finite(e)).is_infinite() || f.eval_c(e).finite().unwrap().norm() > 1e8);
        }
    }
}
