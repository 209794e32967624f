//! Box-counting dimension of a bitmap.

use super::image::RasterImage;
use super::viewport::Viewport;
use crate::error::{DynError, Result};
use num_complex::Complex64;

pub const MIN_SCALES: usize = 4;
/// Box sides in pixels. Sides 1 and 2 are left out because a digitized curve
/// is not self-similar at the pixel scale.
pub const DEFAULT_SCALES: [usize; 4] = [4, 8, 16, 32];
const GRID_SHIFTS: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitmap {
    pub width: usize,
    pub height: usize,
    pub bits: Vec<bool>,
}

impl Bitmap {
    pub fn new(width: usize, height: usize, bits: Vec<bool>) -> Result<Self> {
        if bits.len() != width * height {
            return Err(DynError::InvalidArgument(format!(
                "bitmap of {width}x{height} needs {} cells, got {}",
                width * height,
                bits.len()
            )));
        }
        Ok(Bitmap { width, height, bits })
    }

    pub fn empty(width: usize, height: usize) -> Self {
        Bitmap {
            width,
            height,
            bits: vec![false; width * height],
        }
    }

    /// Black pixels of a grayscale or RGB image.
    pub fn from_black(img: &RasterImage) -> Self {
        let k = img.channels.count();
        let bits = img.data.chunks(k).map(|px| px.iter().all(|&v| v == 0)).collect();
        Bitmap {
            width: img.width,
            height: img.height,
            bits,
        }
    }

    /// Rasterizes a point set; points outside the viewport are dropped.
    pub fn from_points(view: &Viewport, points: &[Complex64]) -> Self {
        let mut b = Bitmap::empty(view.width, view.height);
        for &z in points {
            if let Some((i, j)) = view.pixel_of(z) {
                b.set(i, j);
            }
        }
        b
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[j * self.width + i]
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[j * self.width + i] = true;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Fewest occupied `s x s` boxes over grid shifts of `0, s/4, s/2, 3s/4`
    /// in each direction. A single fixed grid lets the alignment of the set
    /// against the grid leak into the slope.
    pub fn occupied_boxes(&self, s: usize) -> usize {
        let pts: Vec<(usize, usize)> = (0..self.height)
            .flat_map(|j| (0..self.width).map(move |i| (i, j)))
            .filter(|&(i, j)| self.get(i, j))
            .collect();
        let offsets: Vec<usize> = if s < GRID_SHIFTS {
            (0..s).collect()
        } else {
            (0..GRID_SHIFTS).map(|a| a * s / GRID_SHIFTS).collect()
        };
        let bw = self.width / s + 2;
        let bh = self.height / s + 2;
        let mut occ = vec![false; bw * bh];
        let mut best = usize::MAX;
        for &oy in &offsets {
            for &ox in &offsets {
                occ.iter_mut().for_each(|b| *b = false);
                let mut n = 0;
                for &(i, j) in &pts {
                    let k = ((j + oy) / s) * bw + (i + ox) / s;
                    if !occ[k] {
                        occ[k] = true;
                        n += 1;
                    }
                }
                best = best.min(n);
            }
        }
        best
    }

    pub fn to_image(&self) -> RasterImage {
        let mut img = RasterImage::filled(self.width, self.height, super::image::Channels::Gray, 255);
        for (px, &b) in img.data.iter_mut().zip(&self.bits) {
            if b {
                *px = 0;
            }
        }
        img
    }
}

/// Escaped pixels (nonzero) with a bounded (zero) 4-neighbour.
pub fn boundary_bitmap(img: &RasterImage) -> Bitmap {
    Bitmap {
        width: img.width,
        height: img.height,
        bits: super::julia::escape_boundary(img),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoxDimension {
    pub estimate: f64,
    /// `(box side in pixels, occupied boxes)`.
    pub counts: Vec<(usize, usize)>,
}

/// Least-squares slope of `log N(s)` against `log(1/s)` over dyadic box
/// sides `s`.
pub fn box_dimension(bitmap: &Bitmap, scales: &[usize]) -> Result<BoxDimension> {
    if scales.len() < MIN_SCALES {
        return Err(DynError::InvalidArgument(format!("need at least {MIN_SCALES} scales, got {}", scales.len())));
    }
    if let Some(s) = scales.iter().find(|s| !s.is_power_of_two()) {
        return Err(DynError::InvalidArgument(format!("box side {s} is not a power of two")));
    }
    let mut sorted = scales.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != scales.len() {
        return Err(DynError::InvalidArgument("repeated box side".into()));
    }
    if bitmap.count() == 0 {
        return Err(DynError::EmptySet("no box dimension".into()));
    }
    let counts: Vec<(usize, usize)> = sorted.iter().map(|&s| (s, bitmap.occupied_boxes(s))).collect();
    let pts: Vec<(f64, f64)> = counts.iter().map(|&(s, n)| (-(s as f64).ln(), (n as f64).ln())).collect();
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(BoxDimension {
        estimate: sxy / sxx,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::julia::{render_julia_escape, Coloring};

    #[test]
    fn segment_and_square() {
        let mut seg = Bitmap::empty(1024, 1024);
        for i in 0..1024 {
            seg.set(i, 300);
        }
        let d = box_dimension(&seg, &DEFAULT_SCALES).unwrap();
        assert!((d.estimate - 1.0).abs() < 0.05, "{}", d.estimate);
        let mut diag = Bitmap::empty(1024, 1024);
        for i in 0..1024 {
            diag.set(i, i);
        }
        let d = box_dimension(&diag, &DEFAULT_SCALES).unwrap();
        assert!((d.estimate - 1.0).abs() < 0.05, "{}", d.estimate);
        let sq = Bitmap::new(1024, 1024, vec![true; 1024 * 1024]).unwrap();
        let d = box_dimension(&sq, &DEFAULT_SCALES).unwrap();
        assert!((d.estimate - 2.0).abs() < 0.05);
    }

    #[test]
    fn unit_circle_boundary() {
        let v = Viewport::new(-1.5, 1.5, -1.5, 1.5, 1024, 1024).unwrap();
        let img = render_julia_escape(Complex64::new(0.0, 0.0), &v, 1000, Coloring::Binary);
        let d = box_dimension(&boundary_bitmap(&img), &DEFAULT_SCALES).unwrap();
        assert!((d.estimate - 1.0).abs() < 0.05, "{:?}", d);
    }

    #[test]
    fn basilica_boundary_is_fractal() {
        let v = Viewport::new(-2.0, 2.0, -2.0, 2.0, 1024, 1024).unwrap();
        let img = render_julia_escape(Complex64::new(-1.0, 0.0), &v, 1000, Coloring::Binary);
        let d = box_dimension(&boundary_bitmap(&img), &DEFAULT_SCALES).unwrap();
        assert!(d.estimate > 1.0 && d.estimate < 2.0, "{:?}", d);
    }

    #[test]
    fn rejects_bad_input() {
        let b = Bitmap::empty(8, 8);
        assert!(matches!(box_dimension(&b, &[1, 2, 4, 8]), Err(DynError::EmptySet(_))));
        let mut b = b;
        b.set(1, 1);
        assert!(box_dimension(&b, &[1, 2, 4]).is_err());
        assert!(box_dimension(&b, &[1, 2, 3, 4]).is_err());
    }
}
