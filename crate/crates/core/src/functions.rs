//! Weight and cost functions of the revelation level.
//!
//! The weight function `λ` maps a revelation level `α ∈ [0, 1]` to the weight a
//! digital representative puts on the member's true preference; the cost
//! function `c` is the communication cost of revealing `α`. Both are supplied as
//! value + derivative objects so that any family satisfying the shape
//! assumptions (λ increasing and concave with λ(0)=0, λ(1)=1; c increasing and
//! convex with c(0)=0, c(1)=∞) can be plugged in.

use std::fmt;
use std::sync::Arc;

use crate::error::{GameError, Result};
use crate::roots::bisect_increasing;
use crate::scalar::Scalar;

/// Increasing, concave map from revelation level to representative weight.
pub trait WeightFunction<T: Scalar>: Send + Sync {
    fn value(&self, alpha: T) -> T;
    fn derivative(&self, alpha: T) -> T;
    /// Analytic inverse, if the family has one. `None` falls back to bisection.
    fn inverse(&self, _weight: T) -> Option<T> {
        None
    }
}

/// Increasing, convex communication cost, divergent at full revelation.
pub trait CostFunction<T: Scalar>: Send + Sync {
    fn value(&self, alpha: T) -> T;
    fn derivative(&self, alpha: T) -> T;
}

/// `λ(α) = α`.
#[derive(Debug, Clone, Copy, Default)]
pub struct LinearWeight;

impl<T: Scalar> WeightFunction<T> for LinearWeight {
    fn value(&self, alpha: T) -> T {
        alpha
    }
    fn derivative(&self, _alpha: T) -> T {
        T::one()
    }
    fn inverse(&self, weight: T) -> Option<T> {
        Some(weight)
    }
}

/// `c(α) = −β ln(1 − α)`.
#[derive(Debug, Clone, Copy)]
pub struct LogCost<T> {
    pub beta: T,
}

impl<T: Scalar> CostFunction<T> for LogCost<T> {
    fn value(&self, alpha: T) -> T {
        -self.beta * (T::one() - alpha).ln()
    }
    fn derivative(&self, alpha: T) -> T {
        self.beta / (T::one() - alpha)
    }
}

type ScalarFn<T> = Box<dyn Fn(T) -> T + Send + Sync>;

/// Weight function assembled from closures.
pub struct CustomWeight<T> {
    value: ScalarFn<T>,
    derivative: ScalarFn<T>,
    inverse: Option<ScalarFn<T>>,
}

impl<T: Scalar> CustomWeight<T> {
    pub fn new(
        value: impl Fn(T) -> T + Send + Sync + 'static,
        derivative: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            value: Box::new(value),
            derivative: Box::new(derivative),
            inverse: None,
        }
    }

    pub fn with_inverse(mut self, inverse: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        self.inverse = Some(Box::new(inverse));
        self
    }
}

impl<T: Scalar> WeightFunction<T> for CustomWeight<T> {
    fn value(&self, alpha: T) -> T {
        (self.value)(alpha)
    }
    fn derivative(&self, alpha: T) -> T {
        (self.derivative)(alpha)
    }
    fn inverse(&self, weight: T) -> Option<T> {
        self.inverse.as_ref().map(|f| f(weight))
    }
}

/// Cost function assembled from closures.
pub struct CustomCost<T> {
    value: ScalarFn<T>,
    derivative: ScalarFn<T>,
}

impl<T: Scalar> CustomCost<T> {
    pub fn new(
        value: impl Fn(T) -> T + Send + Sync + 'static,
        derivative: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        Self {
            value: Box::new(value),
            derivative: Box::new(derivative),
        }
    }
}

impl<T: Scalar> CostFunction<T> for CustomCost<T> {
    fn value(&self, alpha: T) -> T {
        (self.value)(alpha)
    }
    fn derivative(&self, alpha: T) -> T {
        (self.derivative)(alpha)
    }
}

/// The weight/cost pair shared by both members. Immutable and cheap to clone.
#[derive(Clone)]
pub struct FunctionPair<T: Scalar> {
    weight: Arc<dyn WeightFunction<T>>,
    cost: Arc<dyn CostFunction<T>>,
    alpha_cap: T,
    label: String,
}

impl<T: Scalar> fmt::Debug for FunctionPair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionPair")
            .field("label", &self.label)
            .field("alpha_cap", &self.alpha_cap)
            .finish()
    }
}

impl<T: Scalar> FunctionPair<T> {
    pub fn new(
        weight: impl WeightFunction<T> + 'static,
        cost: impl CostFunction<T> + 'static,
        label: impl Into<String>,
    ) -> Self {
        Self {
            weight: Arc::new(weight),
            cost: Arc::new(cost),
            alpha_cap: T::default_alpha_cap(),
            label: label.into(),
        }
    }

    /// Overrides the numerical upper bound on `α`. Must lie in `(0, 1)`.
    pub fn with_alpha_cap(mut self, alpha_cap: T) -> Result<Self> {
        if !(alpha_cap > T::zero() && alpha_cap < T::one()) {
            return Err(GameError::InvalidParameter {
                name: "alpha_cap",
                value: alpha_cap.as_f64(),
                reason: "must lie in (0, 1)",
            });
        }
        self.alpha_cap = alpha_cap;
        Ok(self)
    }

    pub fn alpha_cap(&self) -> T {
        self.alpha_cap
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn weight(&self, alpha: T) -> T {
        self.weight.value(alpha)
    }

    #[inline]
    pub fn weight_derivative(&self, alpha: T) -> T {
        self.weight.derivative(alpha)
    }

    /// `λ⁻¹(w)` for `w ∈ [0, 1]`; inputs outside are clamped.
    pub fn weight_inverse(&self, w: T) -> T {
        let w = w.max(T::zero()).min(T::one());
        if let Some(alpha) = self.weight.inverse(w) {
            return alpha;
        }
        bisect_increasing(
            T::zero(),
            T::one(),
            |a| self.weight.value(a) - w,
            T::inverse_tolerance(),
            200,
        )
    }

    #[inline]
    pub fn cost(&self, alpha: T) -> T {
        self.cost.value(alpha)
    }

    #[inline]
    pub fn cost_derivative(&self, alpha: T) -> T {
        self.cost.derivative(alpha)
    }

    /// `c′(α) / λ′(α)`, the marginal cost per unit of weight.
    #[inline]
    pub fn marginal_ratio(&self, alpha: T) -> T {
        self.cost.derivative(alpha) / self.weight.derivative(alpha)
    }
}

/// Linear weight with logarithmic cost: `λ(α) = α`, `c(α) = −β ln(1 − α)`.
pub fn make_linear_log_pair<T: Scalar>(beta: T) -> Result<FunctionPair<T>> {
    if !beta.is_finite() || beta <= T::zero() {
        return Err(GameError::InvalidParameter {
            name: "beta",
            value: beta.as_f64(),
            reason: "must be a positive finite number",
        });
    }
    Ok(FunctionPair::new(
        LinearWeight,
        LogCost { beta },
        format!("linear-log, beta={beta}"),
    ))
}

/// Trigger price `p = c′(0) / λ′(0)`.
pub fn trigger_price<T: Scalar>(pair: &FunctionPair<T>) -> Result<T> {
    let slope = pair.weight_derivative(T::zero());
    if !slope.is_finite() || slope <= T::zero() {
        return Err(GameError::DegenerateFunction(format!(
            "weight derivative at 0 is {slope}, trigger price undefined"
        )));
    }
    let p = pair.cost_derivative(T::zero()) / slope;
    if !p.is_finite() || p <= T::zero() {
        return Err(GameError::DegenerateFunction(format!(
            "trigger price {p} is not a positive finite number"
        )));
    }
    Ok(p)
}

/// Outcome of one shape check.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Largest violation observed (0 when the check passes cleanly).
    pub worst_violation: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub checks: Vec<ShapeCheck>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&ShapeCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ShapeCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, worst: f64, tol: f64) {
        let passed = worst.is_finite() && worst <= tol;
        self.checks.push(ShapeCheck {
            name,
            passed,
            worst_violation: if worst.is_nan() { f64::INFINITY } else { worst.max(0.0) },
        });
    }
}

fn uniform_grid<T: Scalar>(hi: T, n: usize) -> Vec<T> {
    let last = T::lit((n - 1) as f64);
    (0..n).map(|i| hi * T::lit(i as f64) / last).collect()
}

fn relative_gap<T: Scalar>(analytic: T, numeric: T) -> f64 {
    let scale = analytic.abs().max(numeric.abs()).max(T::min_positive_value());
    ((analytic - numeric).abs() / scale).as_f64()
}

/// Checks the shape assumptions of `pair` on a uniform grid of `grid_points`
/// (at least 16). Failures are reported, never raised.
pub fn validate_function_pair<T: Scalar>(pair: &FunctionPair<T>, grid_points: usize) -> ValidationReport {
    let n = grid_points.max(16);
    let cap = pair.alpha_cap();
    let mono = T::monotone_tolerance().as_f64();
    let curv = T::curvature_tolerance().as_f64();
    let mut report = ValidationReport::default();

    let wgrid = uniform_grid(T::one(), n);
    let w: Vec<T> = wgrid.iter().map(|&a| pair.weight(a)).collect();
    let boundary = pair
        .weight(T::zero())
        .abs()
        .max((pair.weight(T::one()) - T::one()).abs())
        .as_f64();
    report.push("weight_boundary", boundary, mono);

    let worst_increase = w
        .windows(2)
        .map(|p| (p[0] - p[1]).as_f64())
        .fold(f64::NEG_INFINITY, f64::max);
    // strict: any non-positive step fails
    report.checks.push(ShapeCheck {
        name: "weight_increasing",
        passed: worst_increase < 0.0,
        worst_violation: worst_increase.max(0.0),
    });

    let worst_concave = w
        .windows(3)
        .map(|t| (t[2] - T::lit(2.0) * t[1] + t[0]).as_f64())
        .fold(0.0, f64::max);
    report.push("weight_concave", worst_concave, curv);

    let cgrid = uniform_grid(cap, n);
    let c: Vec<T> = cgrid.iter().map(|&a| pair.cost(a)).collect();
    report.push("cost_zero_at_origin", pair.cost(T::zero()).abs().as_f64(), mono);

    let worst_cost_increase = c
        .windows(2)
        .map(|p| (p[0] - p[1]).as_f64())
        .fold(f64::NEG_INFINITY, f64::max);
    report.checks.push(ShapeCheck {
        name: "cost_increasing",
        passed: worst_cost_increase < 0.0,
        worst_violation: worst_cost_increase.max(0.0),
    });

    let worst_convex = c
        .windows(3)
        .map(|t| {
            let second = t[2] - T::lit(2.0) * t[1] + t[0];
            (-second / (T::one() + t[1].abs())).as_f64()
        })
        .fold(0.0, f64::max);
    report.push("cost_convex", worst_convex, curv);

    let at_one = pair.cost(T::one());
    report.checks.push(ShapeCheck {
        name: "cost_divergent",
        passed: at_one.is_infinite() && at_one > T::zero(),
        worst_violation: if at_one.is_infinite() { 0.0 } else { at_one.as_f64() },
    });

    let h = T::fd_step();
    let two = T::lit(2.0);
    let fd_worst = |grid: &[T], hi: T, value: &dyn Fn(T) -> T, deriv: &dyn Fn(T) -> T| {
        grid[1..grid.len() - 1]
            .iter()
            .map(|&a| {
                // proportional to the distance from either end, where the cost blows up
                let step = h * T::one().min(a).min(hi - a);
                let numeric = (value(a + step) - value(a - step)) / (two * step);
                relative_gap(deriv(a), numeric)
            })
            .fold(0.0, f64::max)
    };
    let rel = T::fd_rel_tolerance().as_f64();
    let wd = fd_worst(&wgrid, T::one(), &|a| pair.weight(a), &|a| pair.weight_derivative(a));
    report.push("weight_derivative", wd, rel);
    let cd = fd_worst(&cgrid, T::one(), &|a| pair.cost(a), &|a| pair.cost_derivative(a));
    report.push("cost_derivative", cd, rel);

    let ratios: Vec<T> = cgrid.iter().map(|&a| pair.marginal_ratio(a)).collect();
    let worst_ratio = ratios
        .windows(2)
        .map(|p| (p[0] - p[1]).as_f64())
        .fold(f64::NEG_INFINITY, f64::max);
    report.checks.push(ShapeCheck {
        name: "marginal_ratio_increasing",
        passed: worst_ratio.is_finite() && worst_ratio < mono,
        worst_violation: worst_ratio.max(0.0),
    });

    let inv_tol = (T::inverse_tolerance() * T::lit(1e3)).as_f64();
    let worst_inverse = wgrid
        .iter()
        .map(|&a| (pair.weight_inverse(pair.weight(a)) - a).abs().as_f64())
        .fold(0.0, f64::max);
    report.push("weight_inverse", worst_inverse, inv_tol);

    report
}
