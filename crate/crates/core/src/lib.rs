//! Holomorphic dynamics on the Riemann sphere.
//!
//! Rational maps and their cycles, the quadratic family `z^2 + c`, Lattès
//! maps built from the Weierstrass ℘-function, external rays and Yoccoz
//! puzzles, and deterministic renderers.

pub mod cycles;
pub mod error;
pub mod expansion;
pub mod hyperbolic;
pub mod lattes;
pub mod orbit;
pub mod par;
pub mod poly;
pub mod quad;
pub mod rational;
pub mod rays;
pub mod render;
pub mod rng;
pub mod sphere;

pub use error::{DynError, Result};
pub use num_complex::Complex64;
pub use poly::{poly_roots, Poly, PolyRootResult};
pub use rational::RationalMap;
pub use sphere::{spherical_distance, Rotation, SpherePoint};
