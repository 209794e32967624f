use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynError {
    #[error("degenerate map: {0}")]
    DegenerateMap(String),

    #[error("root solver did not converge after {sweeps} sweeps (best residual {residual:e})")]
    RootSolver { sweeps: usize, residual: f64 },

    #[error("cycle search failed at period {period}: {source}")]
    CycleSearch {
        period: usize,
        #[source]
        source: Box<DynError>,
    },

    #[error("cycle equation of degree {degree} exceeds the supported limit {limit}")]
    EquationTooLarge { degree: u64, limit: u64 },

    #[error("orbit hit critical point {point} exactly at step {step}")]
    Degenerate { step: usize, point: String },

    #[error("pole: {0}")]
    Pole(String),

    #[error("bracketing failed at cascade level {level}")]
    Bracketing { level: usize },

    #[error("ray tracing failed: {0}")]
    RayTrace(String),

    #[error("puzzle construction failed: {0}")]
    Puzzle(String),

    #[error("ambiguous location: {0}")]
    Ambiguous(String),

    #[error("empty set: {0}")]
    EmptySet(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, DynError>;
