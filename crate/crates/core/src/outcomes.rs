//! Equilibrium outcomes against the manual-participation baseline.

use crate::equilibrium::{solve_equilibrium, EquilibriumKind, EquilibriumResult};
use crate::error::Result;
use crate::game::{
    baseline_outcomes, derived_quantities, team_decision, Baseline, GameConfig, Member, RevelationProfile,
};
use crate::scalar::Scalar;

/// Absolute (or, for |κ| > 1, relative) tolerance on κ when matching the
/// equality conditions of the team preference loss.
pub const EQUALITY_KAPPA_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeReport<T> {
    pub theta_t_star: T,
    pub theta_t_b: T,
    /// `|θ_T* − θ_T^B|`, computed directly from the two decisions.
    pub decision_gap: T,
    pub e_t_star: T,
    pub e_t_b: T,
    pub delta_e_a: T,
    pub delta_e_b: T,
    /// Preference losses plus communication costs; never includes `C`.
    pub l_t_star: T,
    /// `e_T^B + 2C`.
    pub l_t_b: T,
    /// Manual cost at which both team totals coincide.
    pub break_even_c: T,
    pub baseline: Baseline<T>,
    pub equilibrium: EquilibriumResult<T>,
}

impl<T: Scalar> OutcomeReport<T> {
    pub fn delta_e(&self, member: Member) -> T {
        match member {
            Member::A => self.delta_e_a,
            Member::B => self.delta_e_b,
        }
    }

    /// `L_T^B − L_T*`; positive when representatives win.
    pub fn total_loss_advantage(&self) -> T {
        self.l_t_b - self.l_t_star
    }
}

/// Signed `[(1 − λ_A)d_A + (1 − λ_B)d_B] / 2` at `profile`.
pub fn signed_decision_gap<T: Scalar>(config: &GameConfig<T>, profile: &RevelationProfile<T>) -> T {
    let pair = config.functions();
    let dq = derived_quantities(config);
    let residual = |m: Member| (T::one() - pair.weight(profile.get(m))) * dq.d(m);
    (residual(Member::A) + residual(Member::B)) / T::lit(2.0)
}

/// Closed form of the team decision gap, `|[(1 − λ_A)d_A + (1 − λ_B)d_B] / 2|`.
pub fn decision_gap_closed_form<T: Scalar>(config: &GameConfig<T>, profile: &RevelationProfile<T>) -> T {
    signed_decision_gap(config, profile).abs()
}

/// `[(1 − λ_A)d_A + (1 − λ_B)d_B]² / 4 + (c_A + c_B) / 2`.
pub fn break_even_manual_cost<T: Scalar>(config: &GameConfig<T>, profile: &RevelationProfile<T>) -> T {
    let two = T::lit(2.0);
    let gap2 = two * signed_decision_gap(config, profile);
    let pair = config.functions();
    gap2 * gap2 / T::lit(4.0) + (pair.cost(profile.alpha_a) + pair.cost(profile.alpha_b)) / two
}

pub fn compare_outcomes<T: Scalar>(config: &GameConfig<T>) -> Result<OutcomeReport<T>> {
    Ok(outcomes_for(config, solve_equilibrium(config)?))
}

/// Outcome comparison for an already solved equilibrium.
pub fn outcomes_for<T: Scalar>(config: &GameConfig<T>, equilibrium: EquilibriumResult<T>) -> OutcomeReport<T> {
    let baseline = baseline_outcomes(config);
    let profile = equilibrium.profile;
    let theta_t_star = team_decision(config, &profile);
    let e_a = equilibrium.loss_a.preference;
    let e_b = equilibrium.loss_b.preference;
    OutcomeReport {
        theta_t_star,
        theta_t_b: baseline.theta_t,
        decision_gap: (theta_t_star - baseline.theta_t).abs(),
        e_t_star: e_a + e_b,
        e_t_b: baseline.e_t,
        delta_e_a: e_a - baseline.e_a,
        delta_e_b: e_b - baseline.e_b,
        l_t_star: equilibrium.loss_a.total() + equilibrium.loss_b.total(),
        l_t_b: baseline.l_t,
        break_even_c: break_even_manual_cost(config, &profile),
        baseline,
        equilibrium,
    }
}

/// One of the four κ conditions under which `e_T* = e_T^B`.
#[derive(Debug, Clone, PartialEq)]
pub struct EqualityCondition<T> {
    /// Equilibrium kind the condition belongs to.
    pub kind: EquilibriumKind,
    /// κ_{A,B} the condition requires at the realized equilibrium weights.
    pub required_kappa: T,
    /// The realized equilibrium is of this kind.
    pub applicable: bool,
    /// Applicable and κ_{A,B} matches `required_kappa` within tolerance.
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EqualityReport<T> {
    pub kind: EquilibriumKind,
    pub kappa: Option<T>,
    pub conditions: Vec<EqualityCondition<T>>,
    /// `e_T* − e_T^B`.
    pub e_t_excess: T,
}

impl<T: Scalar> EqualityReport<T> {
    pub fn matched(&self) -> Option<EquilibriumKind> {
        self.conditions.iter().find(|c| c.holds).map(|c| c.kind)
    }
}

pub fn equality_condition_check<T: Scalar>(config: &GameConfig<T>) -> Result<EqualityReport<T>> {
    let report = compare_outcomes(config)?;
    Ok(equality_conditions(config, &report))
}

/// Evaluates the equality conditions against a computed outcome report.
pub fn equality_conditions<T: Scalar>(config: &GameConfig<T>, report: &OutcomeReport<T>) -> EqualityReport<T> {
    let pair = config.functions();
    let profile = report.equilibrium.profile;
    let one = T::one();
    let rest_a = one - pair.weight(profile.alpha_a);
    let rest_b = one - pair.weight(profile.alpha_b);
    let kappa = derived_quantities(config).kappa;
    let kind = report.equilibrium.kind;
    let tol = T::lit(EQUALITY_KAPPA_TOLERANCE);

    let conditions = [
        (EquilibriumKind::Nr, -one),
        (EquilibriumKind::OprA, -one / rest_a),
        (EquilibriumKind::OprB, -rest_b),
        (EquilibriumKind::BprConflicting, -rest_b / rest_a),
    ]
    .into_iter()
    .map(|(k, required)| {
        let applicable = k == kind;
        let holds = applicable && kappa.is_some_and(|kp| (kp - required).abs() <= tol * one.max(required.abs()));
        EqualityCondition {
            kind: k,
            required_kappa: required,
            applicable,
            holds,
        }
    })
    .collect();

    EqualityReport {
        kind,
        kappa,
        conditions,
        e_t_excess: report.e_t_star - report.e_t_b,
    }
}
