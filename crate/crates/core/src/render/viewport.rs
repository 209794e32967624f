//! Pixel grid over a rectangle of the plane.

use crate::error::{DynError, Result};
use num_complex::Complex64;

type C64 = Complex64;

/// `width × height` pixels over `[x_min, x_max] × [y_min, y_max]`.
///
/// Pixel `(i, j)` (column `i`, row `j`, row 0 at the top) covers
/// `x ∈ [x_min + i dx, x_min + (i+1) dx)`, `y ∈ (y_max - (j+1) dy, y_max - j dy]`
/// with `dx = (x_max - x_min)/width`, `dy = (y_max - y_min)/height`; its
/// sample point is the cell centre.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub width: usize,
    pub height: usize,
}

impl Viewport {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, width: usize, height: usize) -> Result<Viewport> {
        let finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
        if !finite || x_max <= x_min || y_max <= y_min {
            return Err(DynError::InvalidArgument(format!(
                "empty view [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        if width == 0 || height == 0 {
            return Err(DynError::InvalidArgument("image size must be positive".into()));
        }
        Ok(Viewport {
            x_min,
            x_max,
            y_min,
            y_max,
            width,
            height,
        })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.width as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / self.height as f64
    }

    pub fn pixel_center(&self, i: usize, j: usize) -> C64 {
        C64::new(
            self.x_min + (i as f64 + 0.5) * self.dx(),
            self.y_max - (j as f64 + 0.5) * self.dy(),
        )
    }

    /// The pixel containing `z`, if any.
    pub fn pixel_of(&self, z: C64) -> Option<(usize, usize)> {
        let fi = ((z.re - self.x_min) / self.dx()).floor();
        let fj = ((self.y_max - z.im) / self.dy()).floor();
        if fi >= 0.0 && fj >= 0.0 && fi < self.width as f64 && fj < self.height as f64 {
            Some((fi as usize, fj as usize))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centers_round_trip() {
        let v = Viewport::new(-2.5, 1.0, -1.5, 1.5, 351, 300).unwrap();
        for j in 0..v.height {
            for i in 0..v.width {
                assert_eq!(v.pixel_of(v.pixel_center(i, j)), Some((i, j)));
            }
        }
        assert_eq!(v.pixel_of(C64::new(2.0, 0.0)), None);
    }

    #[test]
    fn top_row_is_y_max() {
        let v = Viewport::new(0.0, 1.0, 0.0, 1.0, 2, 2).unwrap();
        assert_eq!(v.pixel_center(0, 0), C64::new(0.25, 0.75));
        assert!(Viewport::new(0.0, 0.0, 0.0, 1.0, 2, 2).is_err());
    }
}
