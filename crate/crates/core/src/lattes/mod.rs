//! Lattès maps: rational maps covered by `z -> n z` on a torus `C/Λ`.

pub mod map;
pub mod probe;
pub mod residuals;
pub mod weierstrass;

pub use map::{duplication_map, lattes_map};
pub use probe::{repelling_density_probe, spherical_grid, GridCell, ProbeResult};
pub use residuals::{
    angle_diff_mod_pi, line_field_residual, line_field_sample, semiconjugacy_residual, LineFieldSample,
};
pub use weierstrass::{lattice_invariants, wp_direct, DirectInvariants, Lattice};
