//! External rays, equipotentials and Yoccoz puzzles for `z² + c`.

pub mod alpha;
pub mod angle;
pub mod green;
pub mod puzzle;
pub mod trace;

pub use alpha::{alpha_fixed_point, AlphaFixedPoint};
pub use angle::Angle;
pub use green::{external_angle, green_dynamical, GreenValue};
pub use puzzle::{piece_diameters, puzzle_build, winding_number, Puzzle, PuzzleConfig, PuzzlePiece};
pub use trace::{
    equipotential, ray_point, trace_ray, trace_rays, Equipotential, LandingMethod, RayPolyline, RaySchedule,
};
