//! Game configuration, representative outputs, team decision and losses.

use std::fmt;

use crate::error::{GameError, Result};
use crate::functions::{trigger_price, validate_function_pair, FunctionPair};
use crate::scalar::Scalar;

/// Grid resolution used when a configuration validates its function pair.
pub const VALIDATION_GRID_POINTS: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Member {
    A,
    B,
}

impl Member {
    pub const BOTH: [Member; 2] = [Member::A, Member::B];

    pub fn other(self) -> Member {
        match self {
            Member::A => Member::B,
            Member::B => Member::A,
        }
    }
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Member::A => "A",
            Member::B => "B",
        })
    }
}

/// Preferences, GenAI prior, function pair and manual participation cost.
#[derive(Debug, Clone)]
pub struct GameConfig<T: Scalar> {
    theta_a: T,
    theta_b: T,
    mu_g: T,
    functions: FunctionPair<T>,
    manual_cost: T,
}

impl<T: Scalar> GameConfig<T> {
    /// Builds a configuration, validating the function pair and `manual_cost ≥ 0`.
    pub fn new(theta_a: T, theta_b: T, mu_g: T, functions: FunctionPair<T>, manual_cost: T) -> Result<Self> {
        for (name, v) in [("theta_A", theta_a), ("theta_B", theta_b), ("mu_G", mu_g)] {
            if !v.is_finite() {
                return Err(GameError::InvalidParameter {
                    name,
                    value: v.as_f64(),
                    reason: "must be finite",
                });
            }
        }
        if !manual_cost.is_finite() || manual_cost < T::zero() {
            return Err(GameError::InvalidParameter {
                name: "manual_cost",
                value: manual_cost.as_f64(),
                reason: "must be a nonnegative finite number",
            });
        }
        let report = validate_function_pair(&functions, VALIDATION_GRID_POINTS);
        if !report.is_valid() {
            let failed: Vec<_> = report.failures().map(|c| c.name).collect();
            return Err(GameError::InvalidFunctionPair(format!(
                "{}: failed {}",
                functions.label(),
                failed.join(", ")
            )));
        }
        trigger_price(&functions)?;
        Ok(Self {
            theta_a,
            theta_b,
            mu_g,
            functions,
            manual_cost,
        })
    }

    /// Prior at zero, preferences equal to the given directional diversities.
    pub fn from_diversities(d_a: T, d_b: T, functions: FunctionPair<T>, manual_cost: T) -> Result<Self> {
        Self::new(d_a, d_b, T::zero(), functions, manual_cost)
    }

    /// Same function pair (already validated), new preferences.
    pub fn with_thetas(&self, theta_a: T, theta_b: T) -> Self {
        Self {
            theta_a,
            theta_b,
            ..self.clone()
        }
    }

    /// Same everything, preferences placed at `μ_G + d`.
    pub fn with_diversities(&self, d_a: T, d_b: T) -> Self {
        self.with_thetas(self.mu_g + d_a, self.mu_g + d_b)
    }

    pub fn with_manual_cost(&self, manual_cost: T) -> Result<Self> {
        Self::new(
            self.theta_a,
            self.theta_b,
            self.mu_g,
            self.functions.clone(),
            manual_cost,
        )
    }

    pub fn theta(&self, member: Member) -> T {
        match member {
            Member::A => self.theta_a,
            Member::B => self.theta_b,
        }
    }

    pub fn mu_g(&self) -> T {
        self.mu_g
    }

    pub fn functions(&self) -> &FunctionPair<T> {
        &self.functions
    }

    pub fn manual_cost(&self) -> T {
        self.manual_cost
    }

    pub fn alpha_cap(&self) -> T {
        self.functions.alpha_cap()
    }

    pub fn diversity(&self, member: Member) -> T {
        self.theta(member) - self.mu_g
    }
}

/// Quantities derived once per configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities<T> {
    pub d_a: T,
    pub d_b: T,
    /// `κ_{A,B} = d_A / d_B`, `None` when `d_B = 0`.
    pub kappa: Option<T>,
    pub trigger_price: T,
}

impl<T: Scalar> DerivedQuantities<T> {
    pub fn d(&self, member: Member) -> T {
        match member {
            Member::A => self.d_a,
            Member::B => self.d_b,
        }
    }

    /// `κ_{m,−m} = d_m / d_{−m}`, `None` when `d_{−m} = 0`.
    pub fn kappa_for(&self, member: Member) -> Option<T> {
        let den = self.d(member.other());
        if den == T::zero() {
            None
        } else {
            Some(self.d(member) / den)
        }
    }
}

pub fn derived_quantities<T: Scalar>(config: &GameConfig<T>) -> DerivedQuantities<T> {
    let d_a = config.diversity(Member::A);
    let d_b = config.diversity(Member::B);
    let trigger_price = trigger_price(config.functions()).expect("validated function pair has a trigger price");
    DerivedQuantities {
        d_a,
        d_b,
        kappa: if d_b == T::zero() { None } else { Some(d_a / d_b) },
        trigger_price,
    }
}

/// A strategy pair `(α_A, α_B)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RevelationProfile<T> {
    pub alpha_a: T,
    pub alpha_b: T,
}

impl<T: Scalar> RevelationProfile<T> {
    pub fn new(alpha_a: T, alpha_b: T) -> Self {
        Self { alpha_a, alpha_b }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn get(&self, member: Member) -> T {
        match member {
            Member::A => self.alpha_a,
            Member::B => self.alpha_b,
        }
    }

    pub fn set(&mut self, member: Member, alpha: T) {
        match member {
            Member::A => self.alpha_a = alpha,
            Member::B => self.alpha_b = alpha,
        }
    }

    pub fn with(mut self, member: Member, alpha: T) -> Self {
        self.set(member, alpha);
        self
    }

    pub fn is_within(&self, cap: T) -> bool {
        [self.alpha_a, self.alpha_b].iter().all(|&a| a >= T::zero() && a <= cap)
    }

    /// Component-wise max absolute difference.
    pub fn distance(&self, other: &Self) -> T {
        (self.alpha_a - other.alpha_a)
            .abs()
            .max((self.alpha_b - other.alpha_b).abs())
    }
}

/// Expected output of member `m`'s representative: `λ(α)θ_m + (1 − λ(α))μ_G`.
pub fn representative_mean<T: Scalar>(config: &GameConfig<T>, member: Member, alpha: T) -> T {
    let w = config.functions().weight(alpha);
    w * config.theta(member) + (T::one() - w) * config.mu_g()
}

/// Team decision: the average of both representatives' expected outputs.
pub fn team_decision<T: Scalar>(config: &GameConfig<T>, profile: &RevelationProfile<T>) -> T {
    (representative_mean(config, Member::A, profile.alpha_a) + representative_mean(config, Member::B, profile.alpha_b))
        / T::lit(2.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemberLoss<T> {
    pub preference: T,
    pub communication: T,
}

impl<T: Scalar> MemberLoss<T> {
    pub fn total(&self) -> T {
        self.preference + self.communication
    }
}

/// `(θ_m − θ_T)² + c(α_m)`, split into its two addends.
pub fn member_loss<T: Scalar>(config: &GameConfig<T>, profile: &RevelationProfile<T>, member: Member) -> MemberLoss<T> {
    let gap = config.theta(member) - team_decision(config, profile);
    MemberLoss {
        preference: gap * gap,
        communication: config.functions().cost(profile.get(member)),
    }
}

/// Manual participation: everyone states their preference exactly at cost `C`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Baseline<T> {
    pub theta_t: T,
    /// Team preference loss `e_T^B`.
    pub e_t: T,
    /// Team total loss `L_T^B = e_T^B + 2C`.
    pub l_t: T,
    pub e_a: T,
    pub e_b: T,
}

impl<T: Scalar> Baseline<T> {
    pub fn e(&self, member: Member) -> T {
        match member {
            Member::A => self.e_a,
            Member::B => self.e_b,
        }
    }
}

pub fn baseline_outcomes<T: Scalar>(config: &GameConfig<T>) -> Baseline<T> {
    let two = T::lit(2.0);
    let (ta, tb) = (config.theta(Member::A), config.theta(Member::B));
    let spread = tb - ta;
    let e_t = spread * spread / two;
    let e_m = spread * spread / T::lit(4.0);
    Baseline {
        theta_t: (ta + tb) / two,
        e_t,
        l_t: e_t + two * config.manual_cost(),
        e_a: e_m,
        e_b: e_m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::make_linear_log_pair;
    use approx::assert_abs_diff_eq;

    fn cfg(ta: f64, tb: f64, mu: f64, beta: f64, c: f64) -> GameConfig<f64> {
        GameConfig::new(ta, tb, mu, make_linear_log_pair(beta).unwrap(), c).unwrap()
    }

    #[test]
    fn derived_quantities_examples() {
        let dq = derived_quantities(&cfg(3.0, -3.0, 0.0, 1.0, 0.0));
        assert_eq!(
            (dq.d_a, dq.d_b, dq.kappa, dq.trigger_price),
            (3.0, -3.0, Some(-1.0), 1.0)
        );
        assert_eq!(derived_quantities(&cfg(3.0, 0.5, 0.0, 1.0, 0.0)).kappa, Some(6.0));
        let dq = derived_quantities(&cfg(1.0, 0.0, 0.0, 1.0, 0.0));
        assert_eq!(dq.kappa, None);
        assert_eq!(dq.kappa_for(Member::B), Some(0.0));
    }

    #[test]
    fn representative_mean_examples() {
        let c = cfg(3.0, -3.0, 0.0, 1.0, 0.0);
        assert_eq!(representative_mean(&c, Member::A, 0.0), 0.0);
        assert_abs_diff_eq!(
            representative_mean(&c, Member::A, 8.0 / 9.0),
            8.0 / 3.0,
            epsilon = 1e-15
        );
        let c = cfg(3.0, -3.0, 1.0, 1.0, 0.0);
        assert_abs_diff_eq!(representative_mean(&c, Member::B, 0.5), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn team_decision_examples() {
        let c = cfg(3.0, -3.0, 0.0, 1.0, 0.0);
        let p = RevelationProfile::new(8.0 / 9.0, 8.0 / 9.0);
        assert_abs_diff_eq!(team_decision(&c, &p), 0.0, epsilon = 1e-15);
        let c = cfg(1.5, -2.0, 0.7, 1.0, 0.0);
        assert_eq!(team_decision(&c, &RevelationProfile::zero()), 0.7);
        let c = cfg(3.0, 3.0, 0.0, 1.0, 0.0);
        assert_abs_diff_eq!(
            team_decision(&c, &RevelationProfile::new(2.0 / 3.0, 2.0 / 3.0)),
            2.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn member_loss_examples() {
        let c = cfg(3.0, -3.0, 0.0, 1.0, 0.0);
        let l = member_loss(&c, &RevelationProfile::new(8.0 / 9.0, 8.0 / 9.0), Member::A);
        assert_abs_diff_eq!(l.preference, 9.0, epsilon = 1e-12);
        assert_abs_diff_eq!(l.communication, 9.0_f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(l.total(), 11.197_224_577_336_22, epsilon = 1e-12);

        let c = cfg(2.0, -1.0, 0.5, 1.0, 0.0);
        for m in Member::BOTH {
            let l = member_loss(&c, &RevelationProfile::zero(), m);
            let d = c.diversity(m);
            assert_eq!(l.preference, d * d);
            assert_eq!(l.communication, 0.0);
        }

        let c = cfg(3.0, 3.0, 0.0, 1.0, 0.0);
        let l = member_loss(&c, &RevelationProfile::new(2.0 / 3.0, 2.0 / 3.0), Member::A);
        assert_abs_diff_eq!(l.preference, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(l.communication, 3.0_f64.ln(), epsilon = 1e-12);
    }

    #[test]
    fn baseline_examples() {
        let b = baseline_outcomes(&cfg(3.0, -3.0, 0.0, 1.0, 2.0));
        assert_eq!((b.theta_t, b.e_t, b.l_t), (0.0, 18.0, 22.0));
        let b = baseline_outcomes(&cfg(3.0, 3.0, 0.0, 1.0, 0.0));
        assert_eq!((b.theta_t, b.e_t, b.l_t), (3.0, 0.0, 0.0));
        let b = baseline_outcomes(&cfg(3.0, 1.0, 0.0, 1.0, 0.5));
        assert_eq!((b.theta_t, b.e_t, b.l_t), (2.0, 2.0, 3.0));
        assert_eq!(b.e_a, 1.0);
        assert_eq!(b.e_b, 1.0);
    }

    #[test]
    fn rejects_negative_manual_cost() {
        let err = GameConfig::new(1.0, 1.0, 0.0, make_linear_log_pair(1.0).unwrap(), -0.1).unwrap_err();
        assert!(matches!(
            err,
            GameError::InvalidParameter {
                name: "manual_cost",
                ..
            }
        ));
    }
}
