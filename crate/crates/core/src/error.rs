use thiserror::Error;

use crate::game::Member;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("degenerate function pair: {0}")]
    DegenerateFunction(String),

    #[error("function pair failed validation: {0}")]
    InvalidFunctionPair(String),

    #[error("member {0} has zero directional diversity or undefined deviation ratio")]
    DegenerateMember(Member),

    #[error("no revelation level reaches target {target} (minimum attainable {minimum})")]
    NoSolution { target: f64, minimum: f64 },

    #[error("best-response iteration did not converge after {iterations} iterations (last iterate ({alpha_a}, {alpha_b}), residual {residual})")]
    ConvergenceFailure {
        iterations: usize,
        alpha_a: f64,
        alpha_b: f64,
        residual: f64,
    },
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;
