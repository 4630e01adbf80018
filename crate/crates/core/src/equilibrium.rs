//! Nash equilibrium of the two-member game.
//!
//! Classification follows the closed-form region tables, written for the
//! member with the larger diversity (|κ| ≥ 1) and mapped back afterwards.
//! No-revelation and one-member profiles are closed form; the two-member
//! profile is the fixed point of the best responses.

use std::fmt;
use std::str::FromStr;

use crate::best_response::{best_response_with, f_inverse, revelation_threshold};
use crate::error::{GameError, Result};
use crate::game::{
    derived_quantities, member_loss, DerivedQuantities, GameConfig, Member, MemberLoss, RevelationProfile,
};
use crate::scalar::Scalar;

pub const BPR_MAX_ITERATIONS: usize = 10_000;
/// Rounds without residual decrease before damping kicks in.
pub const BPR_STALL_ROUNDS: usize = 3;
pub const BPR_DAMPING: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquilibriumKind {
    Nr,
    OprA,
    OprB,
    BprAligned,
    BprConflicting,
}

impl EquilibriumKind {
    pub const ALL: [EquilibriumKind; 5] = [
        EquilibriumKind::Nr,
        EquilibriumKind::OprA,
        EquilibriumKind::OprB,
        EquilibriumKind::BprAligned,
        EquilibriumKind::BprConflicting,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EquilibriumKind::Nr => "NR",
            EquilibriumKind::OprA => "OPR-A",
            EquilibriumKind::OprB => "OPR-B",
            EquilibriumKind::BprAligned => "BPR-Aligned",
            EquilibriumKind::BprConflicting => "BPR-Conflicting",
        }
    }

    fn opr(member: Member) -> Self {
        match member {
            Member::A => EquilibriumKind::OprA,
            Member::B => EquilibriumKind::OprB,
        }
    }

    /// Exchanges the roles of A and B.
    pub fn swapped(self) -> Self {
        match self {
            EquilibriumKind::OprA => EquilibriumKind::OprB,
            EquilibriumKind::OprB => EquilibriumKind::OprA,
            k => k,
        }
    }

    pub fn is_bpr(self) -> bool {
        matches!(self, EquilibriumKind::BprAligned | EquilibriumKind::BprConflicting)
    }
}

impl fmt::Display for EquilibriumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EquilibriumKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        EquilibriumKind::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown equilibrium kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub kind: EquilibriumKind,
    /// Member playing the more diverse role in the region tables.
    pub lead: Member,
    pub condition_trace: Vec<(&'static str, bool)>,
}

/// Equilibrium region of `config`, without solving for the profile.
pub fn classify_equilibrium<T: Scalar>(config: &GameConfig<T>) -> Classification {
    let dq = derived_quantities(config);
    classify_with(config, &dq)
}

fn classify_with<T: Scalar>(config: &GameConfig<T>, dq: &DerivedQuantities<T>) -> Classification {
    let pair = config.functions();
    let mut trace = Vec::with_capacity(8);
    let p = dq.trigger_price;
    let both_zero = dq.d_a == T::zero() && dq.d_b == T::zero();
    trace.push(("d_A = d_B = 0", both_zero));
    if both_zero {
        return Classification {
            kind: EquilibriumKind::Nr,
            lead: Member::A,
            condition_trace: trace,
        };
    }

    let lead = if dq.d_a.abs() >= dq.d_b.abs() {
        Member::A
    } else {
        Member::B
    };
    let follow = lead.other();
    trace.push(("lead is B (roles swapped)", lead == Member::B));
    let (dl, df) = (dq.d(lead), dq.d(follow));
    let (dl2, df2) = (dl * dl, df * df);

    if df == T::zero() {
        let reveals = dl2 > p;
        trace.push(("d_-m = 0", true));
        trace.push(("d_m^2 > p", reveals));
        let kind = if reveals {
            EquilibriumKind::opr(lead)
        } else {
            EquilibriumKind::Nr
        };
        return Classification {
            kind,
            lead,
            condition_trace: trace,
        };
    }

    let two = T::lit(2.0);
    let kappa = dl / df;
    let lead_shift = dl2 * (T::one() - T::one() / (two * kappa));
    let follow_shift = df2 * (T::one() - kappa / two);
    // f_lead⁻¹(2) against ᾶ_lead; only consulted once d_lead² ≥ p, where it exists
    let opr_level = || f_inverse(dq, pair, lead, two).unwrap_or(T::zero());
    let threshold = || revelation_threshold(dq, pair, lead).expect("nonzero diversities");

    let kind = if kappa < T::zero() {
        trace.push(("conflicting", true));
        let nr = dl2 < p && df2 < p;
        let opr = dl2 >= p && follow_shift <= p;
        let bpr = dl2 >= p && df2 >= p;
        let middle = dl2 >= p && df2 < p && p < follow_shift;
        trace.push(("d_A^2 < p and d_B^2 < p", nr));
        trace.push(("d_A^2 >= p and d_B^2(1-k/2) <= p", opr));
        trace.push(("d_A^2 >= p and d_B^2 >= p", bpr));
        trace.push(("d_A^2 >= p, d_B^2 < p < d_B^2(1-k/2)", middle));
        if nr {
            EquilibriumKind::Nr
        } else if opr {
            EquilibriumKind::opr(lead)
        } else if bpr {
            EquilibriumKind::BprConflicting
        } else if middle {
            let stays_opr = !threshold().is_exceeded_by(opr_level());
            trace.push(("f_A^-1(2) <= threshold_A", stays_opr));
            if stays_opr {
                EquilibriumKind::opr(lead)
            } else {
                EquilibriumKind::BprConflicting
            }
        } else {
            trace.push(("unmatched", true));
            fallback(config, dq, lead, opr_level(), EquilibriumKind::BprConflicting)
        }
    } else {
        trace.push(("conflicting", false));
        let nr = dl2 <= p && df2 <= p;
        let opr = dl2 > p && df2 <= p;
        let bpr = lead_shift >= p && follow_shift >= p;
        let middle = dl2 > p && follow_shift < p && p < df2;
        trace.push(("d_A^2 <= p and d_B^2 <= p", nr));
        trace.push(("d_A^2 > p and d_B^2 <= p", opr));
        trace.push(("d_A^2(1-1/(2k)) >= p and d_B^2(1-k/2) >= p", bpr));
        trace.push(("d_A^2 > p, d_B^2(1-k/2) < p < d_B^2", middle));
        if nr {
            EquilibriumKind::Nr
        } else if opr {
            EquilibriumKind::opr(lead)
        } else if bpr {
            EquilibriumKind::BprAligned
        } else if middle {
            let stays_opr = threshold().at_most(opr_level());
            trace.push(("f_A^-1(2) >= threshold_A", stays_opr));
            if stays_opr {
                EquilibriumKind::opr(lead)
            } else {
                EquilibriumKind::BprAligned
            }
        } else {
            trace.push(("unmatched", true));
            fallback(config, dq, lead, opr_level(), EquilibriumKind::BprAligned)
        }
    };

    Classification {
        kind,
        lead,
        condition_trace: trace,
    }
}

/// Rounding can leave a knife-edge configuration outside every table row;
/// decide it by whether the follower answers the one-member profile with zero.
fn fallback<T: Scalar>(
    config: &GameConfig<T>,
    dq: &DerivedQuantities<T>,
    lead: Member,
    lead_level: T,
    bpr: EquilibriumKind,
) -> EquilibriumKind {
    let follower = best_response_with(config.functions(), dq, lead.other(), lead_level);
    if follower.alpha_star == T::zero() {
        EquilibriumKind::opr(lead)
    } else {
        bpr
    }
}

/// One-member profile: the revealing member plays `f_m⁻¹(2)`, the other `0`.
pub fn solve_opr<T: Scalar>(config: &GameConfig<T>, revealing: Member) -> Result<RevelationProfile<T>> {
    let dq = derived_quantities(config);
    let alpha = f_inverse(&dq, config.functions(), revealing, T::lit(2.0))?;
    Ok(RevelationProfile::zero().with(revealing, alpha))
}

/// `max_m |α_m − BR_m(α_{−m})|`.
pub fn best_response_residual<T: Scalar>(config: &GameConfig<T>, profile: &RevelationProfile<T>) -> T {
    let dq = derived_quantities(config);
    residual_with(config, &dq, profile)
}

fn residual_with<T: Scalar>(config: &GameConfig<T>, dq: &DerivedQuantities<T>, profile: &RevelationProfile<T>) -> T {
    Member::BOTH
        .iter()
        .map(|&m| {
            let br = best_response_with(config.functions(), dq, m, profile.get(m.other()));
            (profile.get(m) - br.alpha_star).abs()
        })
        .fold(T::zero(), T::max)
}

/// Two-member profile by alternating best responses.
///
/// Starts from `(f_A⁻¹(2), f_B⁻¹(2))` (zero where `f_m⁻¹(2)` does not exist),
/// updates A then B, and averages with the previous iterate once the residual
/// has failed to shrink for [`BPR_STALL_ROUNDS`] consecutive rounds. Returns the
/// profile and the iterations used.
pub fn solve_bpr<T: Scalar>(config: &GameConfig<T>) -> Result<(RevelationProfile<T>, usize)> {
    let dq = derived_quantities(config);
    let pair = config.functions();
    let two = T::lit(2.0);
    let start = |m: Member| {
        if dq.d(m) == T::zero() {
            T::zero()
        } else {
            f_inverse(&dq, pair, m, two).unwrap_or(T::zero())
        }
    };
    let mut profile = RevelationProfile::new(start(Member::A), start(Member::B));
    let tol = T::fixed_point_tolerance();
    let damping = T::lit(BPR_DAMPING);

    let mut residual = residual_with(config, &dq, &profile);
    if residual <= tol {
        return Ok((profile, 0));
    }
    let mut stalled = 0;
    let mut damped = false;
    for iteration in 1..=BPR_MAX_ITERATIONS {
        let a = best_response_with(pair, &dq, Member::A, profile.alpha_b).alpha_star;
        let a = if damped {
            damping * profile.alpha_a + (T::one() - damping) * a
        } else {
            a
        };
        let b = best_response_with(pair, &dq, Member::B, a).alpha_star;
        let b = if damped {
            damping * profile.alpha_b + (T::one() - damping) * b
        } else {
            b
        };
        profile = RevelationProfile::new(a, b);

        let next = residual_with(config, &dq, &profile);
        if next <= tol {
            return Ok((profile, iteration));
        }
        if next >= residual {
            stalled += 1;
            if stalled >= BPR_STALL_ROUNDS {
                damped = true;
            }
        } else {
            stalled = 0;
        }
        residual = next;
    }
    Err(GameError::ConvergenceFailure {
        iterations: BPR_MAX_ITERATIONS,
        alpha_a: profile.alpha_a.as_f64(),
        alpha_b: profile.alpha_b.as_f64(),
        residual: residual.as_f64(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumResult<T> {
    pub kind: EquilibriumKind,
    pub profile: RevelationProfile<T>,
    pub loss_a: MemberLoss<T>,
    pub loss_b: MemberLoss<T>,
    /// Fixed-point iterations; zero for closed-form kinds.
    pub iterations: usize,
    /// `max_m |α_m* − BR_m(α_{−m}*)|`.
    pub residual: T,
    pub condition_trace: Vec<(&'static str, bool)>,
}

impl<T: Scalar> EquilibriumResult<T> {
    pub fn loss(&self, member: Member) -> MemberLoss<T> {
        match member {
            Member::A => self.loss_a,
            Member::B => self.loss_b,
        }
    }
}

/// Classifies, solves and scores the equilibrium of `config`.
pub fn solve_equilibrium<T: Scalar>(config: &GameConfig<T>) -> Result<EquilibriumResult<T>> {
    let dq = derived_quantities(config);
    let Classification {
        mut kind,
        condition_trace: mut trace,
        ..
    } = classify_with(config, &dq);

    let (profile, iterations) = match kind {
        EquilibriumKind::Nr => (RevelationProfile::zero(), 0),
        EquilibriumKind::OprA => (solve_opr(config, Member::A)?, 0),
        EquilibriumKind::OprB => (solve_opr(config, Member::B)?, 0),
        EquilibriumKind::BprAligned | EquilibriumKind::BprConflicting => solve_bpr(config)?,
    };

    // a weak inequality on the region boundary can name a kind whose revealing
    // level is exactly zero; report the profile actually reached
    let realized = match (profile.alpha_a > T::zero(), profile.alpha_b > T::zero()) {
        (false, false) => EquilibriumKind::Nr,
        (true, false) => EquilibriumKind::OprA,
        (false, true) => EquilibriumKind::OprB,
        (true, true) => kind,
    };
    if realized != kind {
        trace.push(("boundary_relabel", true));
        kind = realized;
    }

    Ok(EquilibriumResult {
        kind,
        profile,
        loss_a: member_loss(config, &profile, Member::A),
        loss_b: member_loss(config, &profile, Member::B),
        iterations,
        residual: residual_with(config, &dq, &profile),
        condition_trace: trace,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationScan<T> {
    pub member: Member,
    pub loss_at_profile: T,
    pub best_grid_alpha: T,
    pub best_grid_loss: T,
    /// `max(0, L(profile) − min_grid L)`.
    pub improvement: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<T> {
    pub scans: [DeviationScan<T>; 2],
    pub tolerance: T,
    pub passed: bool,
}

impl<T: Scalar> VerificationReport<T> {
    pub fn max_improvement(&self) -> T {
        self.scans[0].improvement.max(self.scans[1].improvement)
    }
}

/// Checks that no member gains more than `1e−6 + 2·grid_step` by a unilateral
/// deviation to any level on the grid `{0, step, 2·step, …, alpha_cap}`.
pub fn verify_equilibrium<T: Scalar>(
    config: &GameConfig<T>,
    profile: &RevelationProfile<T>,
    grid_step: T,
) -> Result<VerificationReport<T>> {
    if !(grid_step > T::zero() && grid_step <= T::lit(0.1)) {
        return Err(GameError::InvalidParameter {
            name: "grid_step",
            value: grid_step.as_f64(),
            reason: "must lie in (0, 0.1]",
        });
    }
    let cap = config.alpha_cap();
    let count = (cap / grid_step).floor().to_usize().unwrap_or(0);
    let scan = |member: Member| {
        let loss_at_profile = member_loss(config, profile, member).total();
        let mut best_alpha = T::zero();
        let mut best_loss = T::infinity();
        let levels = (0..=count)
            .map(|i| T::lit(i as f64) * grid_step)
            .chain(std::iter::once(cap));
        for alpha in levels.filter(|&a| a <= cap) {
            let loss = member_loss(config, &profile.with(member, alpha), member).total();
            if loss < best_loss {
                best_loss = loss;
                best_alpha = alpha;
            }
        }
        DeviationScan {
            member,
            loss_at_profile,
            best_grid_alpha: best_alpha,
            best_grid_loss: best_loss,
            improvement: (loss_at_profile - best_loss).max(T::zero()),
        }
    };
    let scans = [scan(Member::A), scan(Member::B)];
    let tolerance = T::lit(1e-6) + T::lit(2.0) * grid_step;
    let passed = scans.iter().all(|s| s.improvement <= tolerance);
    Ok(VerificationReport {
        scans,
        tolerance,
        passed,
    })
}
