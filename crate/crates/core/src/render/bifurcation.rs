//! Raster bifurcation diagram: one parameter per row, late critical-orbit
//! samples scattered along the row.

use super::image::{Channels, RasterImage};
use crate::par::for_each_row;
use crate::quad::attractor_sample;
use num_complex::Complex64;

/// Which way the parameter runs down the image.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Orientation {
    /// `c_lo` on the top row, so `c` decreases upward.
    #[default]
    DecreasingUp,
    IncreasingUp,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BifurcationView {
    pub c_lo: f64,
    pub c_hi: f64,
    /// Horizontal range of orbit values.
    pub x_min: f64,
    pub x_max: f64,
    pub width: usize,
    pub height: usize,
    pub orientation: Orientation,
}

impl BifurcationView {
    pub fn new(c_lo: f64, c_hi: f64, width: usize, height: usize) -> Self {
        BifurcationView {
            c_lo,
            c_hi,
            x_min: -2.0,
            x_max: 2.0,
            width,
            height,
            orientation: Orientation::default(),
        }
    }

    /// Parameter at the center of row `j`.
    pub fn row_param(&self, j: usize) -> f64 {
        let t = (j as f64 + 0.5) / self.height as f64;
        match self.orientation {
            Orientation::DecreasingUp => self.c_lo + t * (self.c_hi - self.c_lo),
            Orientation::IncreasingUp => self.c_hi - t * (self.c_hi - self.c_lo),
        }
    }

    pub fn column_of(&self, x: f64) -> Option<usize> {
        let dx = (self.x_max - self.x_min) / self.width as f64;
        let i = ((x - self.x_min) / dx).floor();
        (i >= 0.0 && i < self.width as f64).then_some(i as usize)
    }
}

/// White background, black where samples fall; escaping rows stay white.
pub fn render_bifurcation(view: &BifurcationView, transient: usize, count: usize) -> RasterImage {
    let mut img = RasterImage::filled(view.width, view.height, Channels::Gray, 255);
    for_each_row(&mut img.data, view.width, |j, row| {
        let s = attractor_sample(Complex64::new(view.row_param(j), 0.0), transient, count);
        for z in &s.points {
            if let Some(i) = view.column_of(z.re) {
                row[i] = 0;
            }
        }
    });
    img
}
