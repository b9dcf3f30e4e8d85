use thiserror::Error;

/// Errors raised by the geometric constructions and the verification sweeps.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BilliardError {
    #[error("billiard requires a > b > 0 (got a = {a}, b = {b})")]
    NotAnEllipse { a: f64, b: f64 },

    #[error("point ({x}, {y}) is not on the boundary (|f - 1| = {residual:e})")]
    OffBoundary { x: f64, y: f64, residual: f64 },

    #[error("|x1| = {x1} exceeds the semi-major axis {a}")]
    AbscissaOutOfRange { x1: f64, a: f64 },

    #[error("direction is not a usable unit vector")]
    BadDirection,

    #[error("direction is tangent to the boundary; the chord is degenerate")]
    DegenerateChord,

    #[error("chord passes through the center; caustic parameter undefined")]
    CentralChord,

    #[error("triangle is degenerate (|signed area| = {area:e})")]
    DegenerateTriangle { area: f64 },

    #[error("parallel through the symmedian does not meet the side")]
    NoIntersection,

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("tolerance must be positive and finite (got {0})")]
    BadTolerance(f64),

    #[error("invalid bracket [{lo}, {hi}]")]
    BadBracket { lo: f64, hi: f64 },

    #[error("no sign change of the second derivative in [{lo}, {hi}]")]
    InflectionNotFound { lo: f64, hi: f64 },
}

pub type Result<T> = std::result::Result<T, BilliardError>;
