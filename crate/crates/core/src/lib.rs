//! Equilibrium solver for the two-member digital representative game.
//!
//! Two members each decide how much personal information `α ∈ [0, 1)` to
//! reveal to a generative-AI representative. A representative's expected
//! output interpolates between the GenAI prior `μ_G` and the member's true
//! preference with weight `λ(α)`; the team decision averages both outputs and
//! each member pays its squared distance to the decision plus a communication
//! cost `c(α)`.
//!
//! The crate computes best responses, classifies and solves the Nash
//! equilibrium, compares it with manual participation, and provides a
//! brute-force grid oracle that shares nothing with the closed-form path but
//! the loss function.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the `*F64` and
//! `*F32` aliases below fix the precision.

pub mod best_response;
pub mod config;
pub mod equilibrium;
pub mod error;
pub mod functions;
pub mod game;
pub mod oracle;
pub mod outcomes;
pub mod roots;
pub mod scalar;

pub use best_response::{
    best_response, f_inverse, f_value, h_value, revelation_threshold, BestResponse, Branch, Threshold,
};
pub use config::{load_config, parse_config, ConfigError, ConfigSpec, FunctionFamily, ParsedConfig};
pub use equilibrium::{
    classify_equilibrium, solve_bpr, solve_equilibrium, solve_opr, verify_equilibrium, Classification, EquilibriumKind,
    EquilibriumResult, VerificationReport,
};
pub use error::{GameError, Result};
pub use functions::{
    make_linear_log_pair, trigger_price, validate_function_pair, CostFunction, CustomCost, CustomWeight, FunctionPair,
    LinearWeight, LogCost, ValidationReport, WeightFunction,
};
pub use game::{
    baseline_outcomes, derived_quantities, member_loss, representative_mean, team_decision, Baseline,
    DerivedQuantities, GameConfig, Member, MemberLoss, RevelationProfile,
};
pub use oracle::{brute_force_best_response, brute_force_equilibrium, GridSpec, OracleError};
pub use outcomes::{compare_outcomes, equality_condition_check, EqualityReport, OutcomeReport};
pub use scalar::Scalar;

pub type FunctionPairF64 = FunctionPair<f64>;
pub type GameConfigF64 = GameConfig<f64>;
pub type RevelationProfileF64 = RevelationProfile<f64>;
pub type EquilibriumResultF64 = EquilibriumResult<f64>;
pub type OutcomeReportF64 = OutcomeReport<f64>;

pub type FunctionPairF32 = FunctionPair<f32>;
pub type GameConfigF32 = GameConfig<f32>;
pub type RevelationProfileF32 = RevelationProfile<f32>;
pub type EquilibriumResultF32 = EquilibriumResult<f32>;
pub type OutcomeReportF32 = OutcomeReport<f32>;
