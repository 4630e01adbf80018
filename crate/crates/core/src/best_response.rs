//! Best response of one member to the other's revelation level.
//!
//! Member `m` trades off pulling the team decision towards `θ_m` against the
//! communication cost. Its first-order condition is `f_m(α_m) = h_m(α_{−m})`
//! with
//!
//! ```text
//! f_m(α)  = λ(α) + (2 / d_m²) · c′(α) / λ′(α)      (strictly increasing)
//! h_m(α′) = 2 − λ(α′) / κ_{m,−m}
//! ```
//!
//! and the closed-form case table below decides whether the interior solution
//! `f_m⁻¹(h_m(α_{−m}))` or the corner `0` is optimal.

use crate::error::{GameError, Result};
use crate::functions::FunctionPair;
use crate::game::{derived_quantities, DerivedQuantities, GameConfig, Member};
use crate::roots::bisect_increasing;
use crate::scalar::Scalar;

/// Maximum bisection halvings for `f_m⁻¹`.
pub const F_INVERSE_MAX_ITER: usize = 200;

fn nonzero_diversity<T: Scalar>(dq: &DerivedQuantities<T>, member: Member) -> Result<T> {
    let d = dq.d(member);
    if d == T::zero() {
        Err(GameError::DegenerateMember(member))
    } else {
        Ok(d)
    }
}

/// `f_m(α) = λ(α) + (2/d_m²)·c′(α)/λ′(α)`.
pub fn f_value<T: Scalar>(dq: &DerivedQuantities<T>, pair: &FunctionPair<T>, member: Member, alpha: T) -> Result<T> {
    let d = nonzero_diversity(dq, member)?;
    Ok(pair.weight(alpha) + T::lit(2.0) / (d * d) * pair.marginal_ratio(alpha))
}

/// Unique `α ∈ [0, alpha_cap]` with `f_m(α) = target`, by bisection.
///
/// Targets below `f_m(0) = 2p/d_m²` have no solution; the caller maps that to
/// the zero branch.
pub fn f_inverse<T: Scalar>(dq: &DerivedQuantities<T>, pair: &FunctionPair<T>, member: Member, target: T) -> Result<T> {
    let d = nonzero_diversity(dq, member)?;
    let coeff = T::lit(2.0) / (d * d);
    let f = |a: T| pair.weight(a) + coeff * pair.marginal_ratio(a);
    let minimum = f(T::zero());
    if target < minimum || target.is_nan() {
        return Err(GameError::NoSolution {
            target: target.as_f64(),
            minimum: minimum.as_f64(),
        });
    }
    Ok(bisect_increasing(
        T::zero(),
        pair.alpha_cap(),
        |a| f(a) - target,
        T::root_tolerance(),
        F_INVERSE_MAX_ITER,
    ))
}

/// `h_m(α_{−m}) = 2 − λ(α_{−m}) / κ_{m,−m}`.
pub fn h_value<T: Scalar>(
    dq: &DerivedQuantities<T>,
    pair: &FunctionPair<T>,
    member: Member,
    alpha_other: T,
) -> Result<T> {
    match dq.kappa_for(member) {
        Some(k) if k != T::zero() => Ok(T::lit(2.0) - pair.weight(alpha_other) / k),
        _ => Err(GameError::DegenerateMember(member)),
    }
}

/// Revelation threshold `ᾶ_m`, with sentinels where `λ⁻¹` is undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold<T> {
    /// The argument of `λ⁻¹` is negative: every level exceeds the threshold.
    Below,
    /// The argument is at least one: no level exceeds the threshold.
    Above,
    Level(T),
}

impl<T: Scalar> Threshold<T> {
    /// `α > ᾶ` with the sentinel semantics.
    pub fn is_exceeded_by(&self, alpha: T) -> bool {
        match *self {
            Threshold::Below => true,
            Threshold::Above => false,
            Threshold::Level(t) => alpha > t,
        }
    }

    /// `ᾶ ≤ α`, the complement of [`is_exceeded_by`](Self::is_exceeded_by) read from the other side.
    pub fn at_most(&self, alpha: T) -> bool {
        match *self {
            Threshold::Below => true,
            Threshold::Above => false,
            Threshold::Level(t) => t <= alpha,
        }
    }

    pub fn level(&self) -> Option<T> {
        match *self {
            Threshold::Level(t) => Some(t),
            _ => None,
        }
    }
}

/// Argument `2/κ_{m,−m} − 2p/(d_A d_B)` of `λ⁻¹` in `ᾶ_m`.
pub fn threshold_argument<T: Scalar>(dq: &DerivedQuantities<T>, member: Member) -> Result<T> {
    let d_m = nonzero_diversity(dq, member)?;
    let d_o = nonzero_diversity(dq, member.other())?;
    let two = T::lit(2.0);
    Ok(two * d_o / d_m - two * dq.trigger_price / (dq.d_a * dq.d_b))
}

/// `ᾶ_m = λ⁻¹(2/κ_{m,−m} − 2p/(d_A d_B))`.
pub fn revelation_threshold<T: Scalar>(
    dq: &DerivedQuantities<T>,
    pair: &FunctionPair<T>,
    member: Member,
) -> Result<Threshold<T>> {
    let x = threshold_argument(dq, member)?;
    Ok(if x < T::zero() {
        Threshold::Below
    } else if x >= T::one() {
        Threshold::Above
    } else {
        Threshold::Level(pair.weight_inverse(x))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Zero,
    Reveal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestResponse<T> {
    pub alpha_star: T,
    pub branch: Branch,
    /// Every condition evaluated on the way to the branch, in order.
    pub condition_trace: Vec<(&'static str, bool)>,
}

/// Best response of `member` to the other member playing `alpha_other`.
pub fn best_response<T: Scalar>(config: &GameConfig<T>, member: Member, alpha_other: T) -> BestResponse<T> {
    let dq = derived_quantities(config);
    best_response_with(config.functions(), &dq, member, alpha_other)
}

/// [`best_response`] with precomputed derived quantities.
pub fn best_response_with<T: Scalar>(
    pair: &FunctionPair<T>,
    dq: &DerivedQuantities<T>,
    member: Member,
    alpha_other: T,
) -> BestResponse<T> {
    let mut trace = Vec::with_capacity(8);
    let zero = |trace: Vec<(&'static str, bool)>| BestResponse {
        alpha_star: T::zero(),
        branch: Branch::Zero,
        condition_trace: trace,
    };

    let d = dq.d(member);
    let p = dq.trigger_price;
    trace.push(("d_m = 0", d == T::zero()));
    if d == T::zero() {
        return zero(trace);
    }
    let d2 = d * d;
    let d_other = dq.d(member.other());
    trace.push(("d_-m = 0", d_other == T::zero()));

    let reveal = if d_other == T::zero() {
        // the other representative outputs the prior whatever it reveals: h_m ≡ 2
        let zero_all = d2 <= p;
        trace.push(("d_m^2 <= p", zero_all));
        !zero_all
    } else {
        let kappa = d / d_other;
        let shifted = d2 * (T::one() - T::one() / (T::lit(2.0) * kappa));
        let threshold = revelation_threshold(dq, pair, member.other()).expect("both diversities nonzero");
        let exceeded = threshold.is_exceeded_by(alpha_other);
        if kappa < T::zero() {
            trace.push(("conflicting", true));
            let zero_all = shifted <= p;
            let reveal_all = d2 >= p;
            let middle = d2 < p && p < shifted;
            trace.push(("d_m^2(1-1/(2k)) <= p", zero_all));
            trace.push(("d_m^2 >= p", reveal_all));
            trace.push(("d_m^2 < p < d_m^2(1-1/(2k))", middle));
            trace.push(("alpha_-m > threshold_-m", exceeded));
            if zero_all {
                false
            } else {
                reveal_all || (middle && exceeded)
            }
        } else {
            trace.push(("conflicting", false));
            let zero_all = d2 <= p;
            let reveal_all = shifted >= p;
            let middle = shifted < p && p < d2;
            trace.push(("d_m^2 <= p", zero_all));
            trace.push(("d_m^2(1-1/(2k)) >= p", reveal_all));
            trace.push(("d_m^2(1-1/(2k)) < p < d_m^2", middle));
            trace.push(("alpha_-m > threshold_-m", exceeded));
            if zero_all {
                false
            } else {
                reveal_all || !(middle && exceeded)
            }
        }
    };

    if !reveal {
        return zero(trace);
    }
    let target = match dq.kappa_for(member) {
        Some(_) => h_value(dq, pair, member, alpha_other).expect("kappa defined"),
        None => T::lit(2.0),
    };
    match f_inverse(dq, pair, member, target) {
        Ok(alpha) if alpha > T::zero() => BestResponse {
            alpha_star: alpha,
            branch: Branch::Reveal,
            condition_trace: trace,
        },
        // h_m(α_{−m}) sits on f_m(0) up to rounding: both branches give α = 0
        _ => {
            trace.push(("knife_edge", true));
            zero(trace)
        }
    }
}
