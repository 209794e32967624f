//! Coverage of the sphere by repelling periodic points.

use crate::cycles::find_cycles;
use crate::error::{DynError, Result};
use crate::orbit::CycleClass;
use crate::par::map_range;
use crate::rational::RationalMap;
use crate::sphere::{spherical_distance, SpherePoint};
use std::f64::consts::TAU;

/// One cell of the equal-area grid: rows in height, columns in longitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridCell {
    pub center: SpherePoint,
    /// Largest distance from the centre to a corner.
    pub radius: f64,
}

fn unit(z: f64, phi: f64) -> SpherePoint {
    let r = (1.0 - z * z).max(0.0).sqrt();
    SpherePoint::from_unit_vector([r * phi.cos(), r * phi.sin(), z])
}

/// The `g × g` grid with rows of equal height `2/g` (hence equal area).
pub fn spherical_grid(g: usize) -> Vec<GridCell> {
    let gf = g as f64;
    let mut cells = Vec::with_capacity(g * g);
    for j in 0..g {
        let z0 = 1.0 - 2.0 * j as f64 / gf;
        let z1 = 1.0 - 2.0 * (j + 1) as f64 / gf;
        let zc = 1.0 - 2.0 * (j as f64 + 0.5) / gf;
        for k in 0..g {
            let p0 = TAU * k as f64 / gf;
            let p1 = TAU * (k + 1) as f64 / gf;
            let center = unit(zc, TAU * (k as f64 + 0.5) / gf);
            let radius = [(z0, p0), (z0, p1), (z1, p0), (z1, p1)]
                .iter()
                .map(|&(z, p)| spherical_distance(center, unit(z, p)))
                .fold(0.0, f64::max);
            cells.push(GridCell { center, radius });
        }
    }
    cells
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeResult {
    pub coverage: f64,
    pub covered: usize,
    pub cells: usize,
    /// Repelling periodic points used.
    pub repelling_points: usize,
    /// Periods at which the cycle search failed (their points are missing).
    pub failed_periods: Vec<usize>,
}

/// Fraction of grid cells whose centre lies within the cell radius of a
/// repelling periodic point of period at most `period_bound`.
pub fn repelling_density_probe(map: &RationalMap, period_bound: usize, grid_size: usize) -> Result<ProbeResult> {
    if grid_size == 0 || period_bound == 0 {
        return Err(DynError::InvalidArgument("grid size and period bound must be positive".into()));
    }
    // a failure at some period only drops that period and the ones above it
    let mut failed_periods = Vec::new();
    let mut cycles = Vec::new();
    for bound in (1..=period_bound).rev() {
        match find_cycles(map, bound) {
            Ok(c) => {
                cycles = c;
                break;
            }
            Err(_) => failed_periods.push(bound),
        }
    }
    failed_periods.reverse();
    let points: Vec<SpherePoint> = cycles
        .iter()
        .filter(|c| c.class == CycleClass::Repelling)
        .flat_map(|c| c.points.iter().copied())
        .collect();
    let cells = spherical_grid(grid_size);
    let hits = map_range(cells.len(), |i| {
        let cell = cells[i];
        points.iter().any(|&p| spherical_distance(p, cell.center) <= cell.radius)
    });
    let covered = hits.iter().filter(|&&h| h).count();
    Ok(ProbeResult {
        coverage: covered as f64 / cells.len() as f64,
        covered,
        cells: cells.len(),
        repelling_points: points.len(),
        failed_periods,
    })
}
