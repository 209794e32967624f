//! Numerical experiment on `z^2 - 1.99999`: is there an attracting cycle?

use super::centers::component_centers;
use super::mandelbrot::mandelbrot_escape;
use crate::orbit::{attracting_limit, lyapunov_exponent, Cycle, LimitOutcome, LOOP_TOL};
use crate::rational::RationalMap;
use crate::sphere::SpherePoint;
use num_complex::Complex64;
use std::fmt;

pub const CHALLENGE_C: f64 = -1.99999;
pub const CHALLENGE_BUDGET: usize = 10_000_000;
const BURN_IN: usize = 1000;

pub const CAVEAT: &str = "not finding an attracting cycle within the budget does NOT show that none exists; \
a cycle of very long period or with a tiny basin would be missed";

#[derive(Clone, Debug, PartialEq)]
pub struct ChallengeReport {
    pub c: f64,
    pub budget: usize,
    pub bounded: bool,
    pub escape_step: Option<usize>,
    pub cycle: Option<Cycle>,
    pub lyapunov: Option<f64>,
}

pub fn challenge_report(c: f64, budget: usize) -> ChallengeReport {
    let cc = Complex64::new(c, 0.0);
    let v = mandelbrot_escape(cc, budget);
    let f = RationalMap::quadratic(cc);
    let zero = SpherePoint::new(0.0, 0.0);
    let cycle = match attracting_limit(&f, zero, budget, LOOP_TOL) {
        LimitOutcome::Cycle(c) if c.class.is_attracting() => Some(c),
        _ => None,
    };
    let lyapunov = if v.escaped || budget <= BURN_IN {
        None
    } else {
        lyapunov_exponent(&f, zero, budget, BURN_IN).ok()
    };
    ChallengeReport {
        c,
        budget,
        bounded: !v.escaped,
        escape_step: v.escape_step,
        cycle,
        lyapunov,
    }
}

/// The period-3 center, used as a control with a known superattracting
/// cycle.
pub fn period_three_center() -> f64 {
    component_centers(3)
        .ok()
        .and_then(|v| v.into_iter().find(|c| c.im == 0.0))
        .map(|c| c.re)
        .unwrap_or(-1.7548776662466927)
}

impl fmt::Display for ChallengeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "c = {}", self.c)?;
        writeln!(f, "budget = {}", self.budget)?;
        match self.escape_step {
            None => writeln!(f, "critical orbit: bounded for {} iterations", self.budget)?,
            Some(k) => writeln!(f, "critical orbit: escaped at step {k}")?,
        }
        match &self.cycle {
            Some(c) => writeln!(
                f,
                "attracting cycle: period {} ({}), |multiplier| = {:e}",
                c.period,
                c.class.name(),
                c.multiplier.norm()
            )?,
            None => writeln!(f, "attracting cycle: none found within {} iterations", self.budget)?,
        }
        match self.lyapunov {
            Some(l) => writeln!(f, "lyapunov estimate: {l:.6}")?,
            None => writeln!(f, "lyapunov estimate: unavailable")?,
        }
        write!(f, "caveat: {CAVEAT}")
    }
}
