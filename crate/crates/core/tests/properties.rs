//! Invariants of the game, checked on random and swept configurations.

use approx::assert_abs_diff_eq;
use drgame::outcomes::{decision_gap_closed_form, equality_conditions, outcomes_for, signed_decision_gap};
use drgame::{
    baseline_outcomes, best_response, compare_outcomes, derived_quantities, f_value, h_value, make_linear_log_pair,
    member_loss, solve_equilibrium, team_decision, validate_function_pair, verify_equilibrium, Branch, EquilibriumKind,
    GameConfig, Member, RevelationProfile,
};
use proptest::prelude::*;

fn cfg(d_a: f64, d_b: f64, beta: f64) -> GameConfig<f64> {
    GameConfig::from_diversities(d_a, d_b, make_linear_log_pair(beta).unwrap(), 0.0).unwrap()
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

fn config_strategy() -> impl Strategy<Value = GameConfig<f64>> {
    (-5.0..5.0f64, -5.0..5.0f64, -2.0..2.0f64, 0.25..4.0f64)
        .prop_map(|(ta, tb, mu, beta)| GameConfig::new(ta, tb, mu, make_linear_log_pair(beta).unwrap(), 0.0).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn team_decision_is_affine_in_weights(config in config_strategy(), a in 0.0..0.999f64, b in 0.0..0.999f64) {
        let p = RevelationProfile::new(a, b);
        let pair = config.functions();
        let affine = config.mu_g()
            + (pair.weight(a) * config.diversity(Member::A) + pair.weight(b) * config.diversity(Member::B)) / 2.0;
        prop_assert!((team_decision(&config, &p) - affine).abs() <= 1e-12);
    }

    #[test]
    fn prior_is_the_zero_profile_decision(config in config_strategy()) {
        prop_assert_eq!(team_decision(&config, &RevelationProfile::zero()), config.mu_g());
    }

    #[test]
    fn member_loss_addends_sum(config in config_strategy(), a in 0.0..0.999f64, b in 0.0..0.999f64) {
        for m in Member::BOTH {
            let l = member_loss(&config, &RevelationProfile::new(a, b), m);
            prop_assert_eq!(l.total(), l.preference + l.communication);
        }
    }

    #[test]
    fn baseline_splits_evenly(config in config_strategy()) {
        let b = baseline_outcomes(&config);
        prop_assert_eq!(b.e_a, b.e_b);
    }

    #[test]
    fn kappa_reconstructs_d_a(config in config_strategy()) {
        let dq = derived_quantities(&config);
        if let Some(k) = dq.kappa {
            prop_assert!((k * dq.d_b - dq.d_a).abs() <= 1e-12 * dq.d_a.abs().max(1.0));
        }
    }

    #[test]
    fn linear_log_pair_is_valid_at_any_resolution(beta in 0.05..20.0f64, points in 16usize..2048) {
        let report = validate_function_pair(&make_linear_log_pair(beta).unwrap(), points);
        prop_assert!(report.is_valid(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn f_is_strictly_increasing(d in prop_oneof![-5.0..-0.05f64, 0.05..5.0f64], beta in 0.25..4.0f64) {
        let c = cfg(d, 1.0, beta);
        let dq = derived_quantities(&c);
        let mut prev = f64::NEG_INFINITY;
        for a in linspace(0.0, c.alpha_cap(), 257) {
            let f = f_value(&dq, c.functions(), Member::A, a).unwrap();
            prop_assert!(f - prev > 1e-10, "f not increasing at {}", a);
            prev = f;
        }
    }

    #[test]
    fn reveal_branch_solves_first_order_condition(config in config_strategy(), other in 0.0..0.999f64) {
        let dq = derived_quantities(&config);
        for m in Member::BOTH {
            let br = best_response(&config, m, other);
            prop_assert!(br.alpha_star < 1.0);
            prop_assert_eq!(br.branch == Branch::Zero, br.alpha_star == 0.0);
            if br.branch == Branch::Reveal && dq.kappa_for(m).is_some() {
                let f = f_value(&dq, config.functions(), m, br.alpha_star).unwrap();
                let h = h_value(&dq, config.functions(), m, other).unwrap();
                prop_assert!((f - h).abs() <= 1e-8, "f={} h={}", f, h);
            }
        }
    }

    #[test]
    fn equilibrium_invariants(config in config_strategy()) {
        let r = solve_equilibrium(&config).unwrap();
        prop_assert!(r.residual <= 1e-8);
        prop_assert!(r.profile.is_within(config.alpha_cap()));
        let (a, b) = (r.profile.alpha_a > 0.0, r.profile.alpha_b > 0.0);
        let consistent = match r.kind {
            EquilibriumKind::Nr => !a && !b,
            EquilibriumKind::OprA => a && !b,
            EquilibriumKind::OprB => !a && b,
            EquilibriumKind::BprAligned | EquilibriumKind::BprConflicting => a && b,
        };
        prop_assert!(consistent, "{} {:?}", r.kind, r.profile);
    }

    #[test]
    fn more_diverse_member_reveals_more(config in config_strategy()) {
        let r = solve_equilibrium(&config).unwrap();
        for m in Member::BOTH {
            if config.diversity(m).abs() >= config.diversity(m.other()).abs() {
                prop_assert!(r.profile.get(m) >= r.profile.get(m.other()) - 1e-9);
            }
        }
    }

    #[test]
    fn outcome_identities(config in config_strategy()) {
        let r = compare_outcomes(&config).unwrap();
        let p = r.equilibrium.profile;
        prop_assert!((decision_gap_closed_form(&config, &p) - r.decision_gap).abs() <= 1e-9);
        prop_assert!(r.e_t_star >= r.e_t_b - 1e-9);
        let gap = signed_decision_gap(&config, &p);
        prop_assert!((r.e_t_star - r.e_t_b - 2.0 * gap * gap).abs() <= 1e-9 * r.e_t_star.max(1.0));
        let eq = equality_conditions(&config, &r);
        if eq.matched().is_some() {
            prop_assert!(eq.e_t_excess.abs() <= 1e-9);
        }
    }

    #[test]
    fn break_even_separates_total_losses(config in config_strategy()) {
        let r = compare_outcomes(&config).unwrap();
        let below = outcomes_for(&config.with_manual_cost((r.break_even_c - 1e-3).max(0.0)).unwrap(), r.equilibrium.clone());
        let above = outcomes_for(&config.with_manual_cost(r.break_even_c + 1e-3).unwrap(), r.equilibrium.clone());
        prop_assert!(above.l_t_star <= above.l_t_b);
        if r.break_even_c >= 1e-3 {
            prop_assert!(below.l_t_star > below.l_t_b);
        }
    }

    #[test]
    fn conflicting_members_reveal_at_least_as_much(d_a in 0.05..5.0f64, d_b in 0.05..5.0f64, beta in 0.25..4.0f64) {
        let aligned = solve_equilibrium(&cfg(d_a, d_b, beta)).unwrap().profile;
        let conflicting = solve_equilibrium(&cfg(d_a, -d_b, beta)).unwrap().profile;
        prop_assert!(conflicting.alpha_a >= aligned.alpha_a - 1e-9);
        prop_assert!(conflicting.alpha_b >= aligned.alpha_b - 1e-9);
    }
}

#[test]
fn reveal_level_grows_with_own_diversity() {
    for other in [0.0, 0.3, 0.7] {
        for d_b in [-2.0, 1.5] {
            let mut prev = -1.0;
            for d_a in linspace(1.5, 5.0, 60) {
                let br = best_response(&cfg(d_a, d_b, 1.0), Member::A, other);
                if br.branch == Branch::Reveal {
                    assert!(br.alpha_star > prev, "d_a={d_a} d_b={d_b} other={other}");
                    prev = br.alpha_star;
                }
            }
        }
    }
}

/// Consecutive pairs of a sweep that both land in `kind`.
fn sweep_pairs(
    points: impl Iterator<Item = f64>,
    make: impl Fn(f64) -> GameConfig<f64>,
    kind: EquilibriumKind,
    member: Member,
) -> Vec<(f64, f64)> {
    let solved: Vec<_> = points.map(|x| solve_equilibrium(&make(x)).unwrap()).collect();
    solved
        .windows(2)
        .filter(|w| w[0].kind == kind && w[1].kind == kind)
        .map(|w| (w[0].profile.get(member), w[1].profile.get(member)))
        .collect()
}

#[test]
fn opr_level_increases_with_diversity() {
    let pairs = sweep_pairs(
        linspace(1.01, 5.0, 401),
        |d| cfg(d, 0.3, 1.0),
        EquilibriumKind::OprA,
        Member::A,
    );
    assert!(pairs.len() > 300);
    for (lo, hi) in pairs {
        assert!(hi - lo > 1e-8, "{lo} -> {hi}");
    }
}

#[test]
fn bpr_aligned_comparative_statics() {
    let own = sweep_pairs(
        linspace(2.5, 5.0, 101),
        |d| cfg(d, 2.5, 1.0),
        EquilibriumKind::BprAligned,
        Member::A,
    );
    assert!(own.len() > 50);
    assert!(own.iter().all(|(lo, hi)| hi > lo));
    let other = sweep_pairs(
        linspace(2.0, 3.0, 101),
        |d| cfg(3.0, d, 1.0),
        EquilibriumKind::BprAligned,
        Member::A,
    );
    assert!(other.len() > 50);
    assert!(other.iter().all(|(lo, hi)| hi < lo));
}

#[test]
fn bpr_conflicting_comparative_statics() {
    let own = sweep_pairs(
        linspace(2.5, 5.0, 101),
        |d| cfg(d, -2.5, 1.0),
        EquilibriumKind::BprConflicting,
        Member::A,
    );
    assert!(own.len() > 50);
    assert!(own.iter().all(|(lo, hi)| hi > lo));
    let other = sweep_pairs(
        linspace(1.0, 3.0, 101),
        |d| cfg(3.0, -d, 1.0),
        EquilibriumKind::BprConflicting,
        Member::A,
    );
    assert!(other.len() > 50);
    assert!(other.iter().all(|(lo, hi)| hi > lo));
}

#[test]
fn solved_profiles_pass_deviation_scan_on_sweep() {
    for d_b in linspace(-5.0, 5.0, 21) {
        let c = cfg(3.0, d_b, 1.0);
        let r = solve_equilibrium(&c).unwrap();
        assert!(verify_equilibrium(&c, &r.profile, 1e-4).unwrap().passed, "d_b={d_b}");
    }
}

#[test]
fn single_precision_solves_symmetric_cases() {
    let pair = make_linear_log_pair(1.0_f32).unwrap();
    let c = GameConfig::<f32>::from_diversities(3.0, -3.0, pair.clone(), 0.0).unwrap();
    let r = solve_equilibrium(&c).unwrap();
    assert_eq!(r.kind, EquilibriumKind::BprConflicting);
    assert_abs_diff_eq!(r.profile.alpha_a, 8.0 / 9.0, epsilon = 1e-4);
    assert_abs_diff_eq!(r.profile.alpha_b, 8.0 / 9.0, epsilon = 1e-4);

    let c = GameConfig::<f32>::from_diversities(3.0, 3.0, pair.clone(), 0.0).unwrap();
    let r = solve_equilibrium(&c).unwrap();
    assert_eq!(r.kind, EquilibriumKind::BprAligned);
    assert_abs_diff_eq!(r.profile.alpha_a, 2.0 / 3.0, epsilon = 1e-4);

    let c = GameConfig::<f32>::from_diversities(3.0, 0.5, pair, 0.0).unwrap();
    let r = compare_outcomes(&c).unwrap();
    assert_eq!(r.equilibrium.kind, EquilibriumKind::OprA);
    assert_abs_diff_eq!(
        r.equilibrium.profile.alpha_a,
        (3.0 - 17f32.sqrt() / 3.0) / 2.0,
        epsilon = 1e-5
    );
    assert!(r.delta_e_b < 0.0);
}
