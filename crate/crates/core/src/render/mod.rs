//! Rasterization, file output and box counting.

pub mod bifurcation;
pub mod dimension;
pub mod image;
pub mod julia;
pub mod mandel;
pub mod viewport;

pub use bifurcation::{render_bifurcation, BifurcationView, Orientation};
pub use dimension::{box_dimension, boundary_bitmap, Bitmap, BoxDimension, DEFAULT_SCALES};
pub use image::{csv_string, fmt_real, write_csv, write_text, Channels, RasterImage};
pub use julia::{escape_boundary, render_julia_escape, render_julia_inverse, Coloring};
pub use mandel::{render_logview, render_mandelbrot, GOLDEN_MEAN_C0};
pub use viewport::Viewport;
