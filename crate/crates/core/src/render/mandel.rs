//! Parameter-plane renders: the Mandelbrot set and its logarithmic view
//! around a boundary point.

use super::image::{Channels, RasterImage};
use super::julia::{shade, Coloring};
use super::viewport::Viewport;
use crate::par::for_each_row;
use crate::quad::escape_time;
use num_complex::Complex64;

type C64 = Complex64;

pub const DEFAULT_MANDEL_ITERS: usize = 2000;
/// Golden-mean Siegel parameter used as the default log-view center.
pub const GOLDEN_MEAN_C0: C64 = C64::new(-0.39054087, -0.58678790);

/// Pixels whose critical orbit stayed bounded within `max_iter` are black.
pub fn render_mandelbrot(view: &Viewport, max_iter: usize, coloring: Coloring) -> RasterImage {
    render_params(view, max_iter, coloring, |z| z)
}

/// The pixel at `(u, v)` shows the parameter `c0 + exp(u + iv)`, so moving
/// left by `du` zooms toward `c0` by `e^du`.
pub fn render_logview(c0: C64, view: &Viewport, max_iter: usize, coloring: Coloring) -> RasterImage {
    render_params(view, max_iter, coloring, |w| c0 + w.exp())
}

pub fn logview_param(c0: C64, u: f64, v: f64) -> C64 {
    c0 + C64::new(u, v).exp()
}

fn render_params<F>(view: &Viewport, max_iter: usize, coloring: Coloring, to_c: F) -> RasterImage
where
    F: Fn(C64) -> C64 + Sync + Send,
{
    let mut img = RasterImage::filled(view.width, view.height, Channels::Gray, 0);
    for_each_row(&mut img.data, view.width, |j, row| {
        for (i, px) in row.iter_mut().enumerate() {
            let c = to_c(view.pixel_center(i, j));
            *px = shade(escape_time(c, C64::new(0.0, 0.0), max_iter), coloring);
        }
    });
    img
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_is_black() {
        // odd size so a pixel center sits exactly on 0
        let v = Viewport::new(-1.0, 1.0, -1.0, 1.0, 5, 5).unwrap();
        for iters in [1, 10, 1000] {
            let img = render_mandelbrot(&v, iters, Coloring::Binary);
            assert_eq!(img.gray(2, 2), 0);
        }
    }

    #[test]
    fn real_axis_slice() {
        let (w, h) = (701, 301);
        let v = Viewport::new(-2.5, 1.0, -1.5, 1.5, w, h).unwrap();
        let img = render_mandelbrot(&v, DEFAULT_MANDEL_ITERS, Coloring::Binary);
        let j = h / 2;
        assert_eq!(v.pixel_center(0, j).im, 0.0);
        let black: Vec<f64> = (0..w).filter(|&i| img.gray(i, j) == 0).map(|i| v.pixel_center(i, j).re).collect();
        let (lo, hi) = (black[0], *black.last().unwrap());
        assert!((lo + 2.0).abs() <= v.dx(), "{lo}");
        assert!((hi - 0.25).abs() <= v.dx(), "{hi}");
        // contiguous
        assert_eq!(black.len(), ((hi - lo) / v.dx()).round() as usize + 1);
    }

    #[test]
    fn logview_shift_is_zoom() {
        let du = 0.5f64.ln().abs() * 2.0;
        let a = Viewport::new(-4.0, -2.0, -1.0, 1.0, 64, 32).unwrap();
        let b = Viewport::new(-4.0 - du, -2.0 - du, -1.0, 1.0, 64, 32).unwrap();
        for (i, j) in [(0, 0), (10, 5), (63, 31)] {
            let za = logview_param(GOLDEN_MEAN_C0, a.pixel_center(i, j).re, a.pixel_center(i, j).im) - GOLDEN_MEAN_C0;
            let zb = logview_param(GOLDEN_MEAN_C0, b.pixel_center(i, j).re, b.pixel_center(i, j).im) - GOLDEN_MEAN_C0;
            assert!((za / zb - C64::new(du.exp(), 0.0)).norm() < 1e-9);
        }
    }
}
