//! Julia sets: escape time for `z² + c`, inverse iteration for any map.

use super::image::{Channels, RasterImage};
use super::viewport::Viewport;
use crate::error::{DynError, Result};
use crate::par::{for_each_row, map_range};
use crate::quad::escape_time;
use crate::rational::RationalMap;
use crate::rng::stream_rng;
use crate::sphere::SpherePoint;
use num_complex::Complex64;
use rand::Rng;

type C64 = Complex64;

pub const DEFAULT_JULIA_ITERS: usize = 1000;
/// Independent backward chains; fixed so the output never depends on the
/// number of threads.
pub const INVERSE_CHAINS: usize = 64;
pub const INVERSE_BURN_IN: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coloring {
    /// Escaped white, bounded black.
    Binary,
    /// Escaped pixels in gray bands by escape time, bounded black.
    Bands,
}

/// Gray level for an escape verdict.
pub fn shade(escape: Option<usize>, coloring: Coloring) -> u8 {
    match (escape, coloring) {
        (None, _) => 0,
        (Some(_), Coloring::Binary) => 255,
        (Some(n), Coloring::Bands) => 255 - ((n % 16) * 8) as u8,
    }
}

pub fn render_julia_escape(c: C64, view: &Viewport, max_iter: usize, coloring: Coloring) -> RasterImage {
    let mut img = RasterImage::filled(view.width, view.height, Channels::Gray, 0);
    for_each_row(&mut img.data, view.width, |j, row| {
        for (i, px) in row.iter_mut().enumerate() {
            *px = shade(escape_time(c, view.pixel_center(i, j), max_iter), coloring);
        }
    });
    img
}

/// Backward orbits choosing a uniformly random preimage at each step; hits
/// after the burn-in are black on white.
pub fn render_julia_inverse(map: &RationalMap, iterations: usize, seed: u64, view: &Viewport) -> Result<RasterImage> {
    if map.degree() < 2 {
        return Err(DynError::InvalidArgument("inverse iteration needs degree >= 2".into()));
    }
    let quad = map.as_quadratic();
    let (w, h) = (view.width, view.height);
    let words = (w * h).div_ceil(64);
    let per_chain = iterations / INVERSE_CHAINS;
    let extra = iterations % INVERSE_CHAINS;
    let chains: Vec<Vec<u64>> = map_range(INVERSE_CHAINS, |k| {
        let mut rng = stream_rng(seed, k as u64);
        let mut bits = vec![0u64; words];
        let steps = per_chain + usize::from(k < extra);
        let mut z = C64::new(0.5, 0.3);
        for n in 0..INVERSE_BURN_IN + steps {
            let next = match quad {
                Some(c) => {
                    let r = (z - c).sqrt();
                    Some(if rng.random::<bool>() { r } else { -r })
                }
                None => random_preimage(map, z, &mut rng),
            };
            let Some(nz) = next else {
                // skip the sample, keep the chain alive
                continue;
            };
            z = nz;
            if n >= INVERSE_BURN_IN {
                if let Some((i, j)) = view.pixel_of(z) {
                    let idx = j * w + i;
                    bits[idx / 64] |= 1 << (idx % 64);
                }
            }
        }
        bits
    });
    let mut img = RasterImage::filled(w, h, Channels::Gray, 255);
    for bits in &chains {
        for (idx, px) in img.data.iter_mut().enumerate() {
            if bits[idx / 64] >> (idx % 64) & 1 == 1 {
                *px = 0;
            }
        }
    }
    Ok(img)
}

fn random_preimage<R: Rng>(map: &RationalMap, z: C64, rng: &mut R) -> Option<C64> {
    let pre = map.preimages(SpherePoint::Finite(z)).ok()?;
    let flat: Vec<SpherePoint> = pre.iter().flat_map(|&(p, m)| std::iter::repeat_n(p, m)).collect();
    if flat.is_empty() {
        return None;
    }
    // preimages at infinity cannot be plotted or followed in the plane
    flat[rng.random_range(0..flat.len())].finite()
}

/// Pixels that escaped (nonzero) and touch a bounded (zero) pixel along an
/// edge.
pub fn escape_boundary(img: &RasterImage) -> Vec<bool> {
    let (w, h) = (img.width, img.height);
    let bounded = |i: usize, j: usize| img.gray(i, j) == 0;
    let mut out = vec![false; w * h];
    for j in 0..h {
        for i in 0..w {
            if bounded(i, j) {
                continue;
            }
            let touch = (i > 0 && bounded(i - 1, j))
                || (i + 1 < w && bounded(i + 1, j))
                || (j > 0 && bounded(i, j - 1))
                || (j + 1 < h && bounded(i, j + 1));
            out[j * w + i] = touch;
        }
    }
    out
}

/// Black pixels of an image as a mask.
pub fn black_mask(img: &RasterImage) -> Vec<bool> {
    (0..img.width * img.height).map(|k| img.data[k * img.channels.count()] == 0).collect()
}
