//! Scalar abstraction so the solver runs in `f32` or `f64`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating point type the game is solved in.
///
/// The numerical tolerances are tied to the precision of the type: the `f64`
/// values are the ones the solver is specified against, the `f32` values are
/// the tightest settings that single precision can honour.
pub trait Scalar: Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Largest revelation level ever evaluated; `c(1)` is infinite.
    fn default_alpha_cap() -> Self;
    /// Absolute tolerance on `α` for the monotone root finders.
    fn root_tolerance() -> Self;
    /// Tolerance for the numerical inverse of the weight function.
    fn inverse_tolerance() -> Self;
    /// Residual at which best-response iteration is considered converged.
    fn fixed_point_tolerance() -> Self;
    /// Step of the central differences used when validating derivatives.
    fn fd_step() -> Self;
    /// Relative tolerance for derivative vs finite-difference agreement.
    fn fd_rel_tolerance() -> Self;
    /// Slack for second-difference (curvature) checks.
    fn curvature_tolerance() -> Self;
    /// Slack for grid monotonicity checks.
    fn monotone_tolerance() -> Self;

    /// Converts an `f64` literal. Panics only if the type cannot represent finite `f64`s.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("scalar type cannot represent f64 literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn default_alpha_cap() -> Self {
        1.0 - 1e-9
    }
    fn root_tolerance() -> Self {
        1e-13
    }
    fn inverse_tolerance() -> Self {
        1e-12
    }
    fn fixed_point_tolerance() -> Self {
        1e-10
    }
    fn fd_step() -> Self {
        1e-5
    }
    fn fd_rel_tolerance() -> Self {
        1e-6
    }
    fn curvature_tolerance() -> Self {
        1e-8
    }
    fn monotone_tolerance() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    fn default_alpha_cap() -> Self {
        1.0 - f32::EPSILON
    }
    fn root_tolerance() -> Self {
        1e-7
    }
    fn inverse_tolerance() -> Self {
        1e-7
    }
    fn fixed_point_tolerance() -> Self {
        2e-5
    }
    fn fd_step() -> Self {
        1e-3
    }
    fn fd_rel_tolerance() -> Self {
        1e-2
    }
    fn curvature_tolerance() -> Self {
        1e-5
    }
    fn monotone_tolerance() -> Self {
        1e-6
    }
}
