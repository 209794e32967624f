//! The quadratic family `f_c(z) = z^2 + c`.

pub mod bifurcation;
pub mod cascade;
pub mod centers;
pub mod challenge;
pub mod logistic;
pub mod mandelbrot;
pub mod windows;

pub use bifurcation::{attractor_sample, bifurcation_scan, period_transitions, AttractorSample, PeriodTransition};
pub use cascade::{superstable_cascade, CascadeResult};
pub use centers::component_centers;
pub use challenge::{challenge_report, ChallengeReport};
pub use logistic::{c_to_logistic, logistic_param};
pub use mandelbrot::{cardioid_or_disk, escape_time, mandelbrot_escape, MandelbrotVerdict};
pub use windows::{window_scan, WindowRecord};
