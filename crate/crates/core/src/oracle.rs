//! Brute-force reference solutions.
//!
//! Everything here minimises the member loss directly over a grid of
//! revelation levels. Nothing from the closed-form best response or the
//! equilibrium tables is used, so agreement is independent evidence.

use thiserror::Error;

use crate::error::{GameError, Result};
use crate::game::{member_loss, GameConfig, Member, RevelationProfile};
use crate::scalar::Scalar;

pub const DEFAULT_GRID_STEP: f64 = 1e-4;
pub const DEFAULT_MAX_ROUNDS: usize = 500;

/// Uniform grid `{0, step, 2·step, …} ∪ {upper}` on `[0, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    step: T,
    upper: T,
}

impl<T: Scalar> GridSpec<T> {
    pub fn new(step: T, upper: T) -> Result<Self> {
        if !(step > T::zero() && step <= T::lit(0.01)) {
            return Err(GameError::InvalidParameter {
                name: "step",
                value: step.as_f64(),
                reason: "grid step must lie in (0, 0.01]",
            });
        }
        if !(upper > T::zero() && upper < T::one()) {
            return Err(GameError::InvalidParameter {
                name: "upper",
                value: upper.as_f64(),
                reason: "grid upper bound must lie in (0, 1)",
            });
        }
        Ok(Self { step, upper })
    }

    /// Given step, upper bound at the configuration's `alpha_cap`.
    pub fn for_config(config: &GameConfig<T>, step: T) -> Result<Self> {
        Self::new(step, config.alpha_cap())
    }

    pub fn step(&self) -> T {
        self.step
    }

    pub fn upper(&self) -> T {
        self.upper
    }

    pub fn points(&self) -> impl Iterator<Item = T> + '_ {
        let count = (self.upper / self.step).floor().to_usize().unwrap_or(0);
        let on_grid = (0..=count)
            .map(move |i| T::lit(i as f64) * self.step)
            .filter(move |&a| a < self.upper);
        on_grid.chain(std::iter::once(self.upper))
    }
}

/// Grid argmin of `member`'s total loss, ties broken towards smaller `α`.
pub fn brute_force_best_response<T: Scalar>(
    config: &GameConfig<T>,
    member: Member,
    alpha_other: T,
    grid: &GridSpec<T>,
) -> T {
    let base = RevelationProfile::zero().with(member.other(), alpha_other);
    let mut best = (T::zero(), T::infinity());
    for alpha in grid.points() {
        let loss = member_loss(config, &base.with(member, alpha), member).total();
        if loss < best.1 {
            best = (alpha, loss);
        }
    }
    best.0
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("grid best responses did not settle within {rounds} rounds; last iterates {tail:?}")]
    NonConvergence { rounds: usize, tail: Vec<(f64, f64)> },
}

/// Alternating grid best responses from `(0, 0)` until a round reproduces
/// the previous profile exactly.
pub fn brute_force_equilibrium<T: Scalar>(
    config: &GameConfig<T>,
    grid: &GridSpec<T>,
    max_rounds: usize,
) -> Result<RevelationProfile<T>, OracleError> {
    let mut profile = RevelationProfile::zero();
    let mut history = Vec::new();
    for _ in 0..max_rounds {
        let a = brute_force_best_response(config, Member::A, profile.alpha_b, grid);
        let b = brute_force_best_response(config, Member::B, a, grid);
        let next = RevelationProfile::new(a, b);
        if next == profile {
            return Ok(next);
        }
        profile = next;
        history.push((a.as_f64(), b.as_f64()));
    }
    let tail = history.split_off(history.len().saturating_sub(8));
    Err(OracleError::NonConvergence {
        rounds: max_rounds,
        tail,
    })
}
