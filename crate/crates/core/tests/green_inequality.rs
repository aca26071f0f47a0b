mod common;

use common::{k_gamma, rel};
use kprabhakar::inequality::default_rule;
use kprabhakar::{
    cabrera_rhs, hw_check, hw_lhs, kernel_eval, BVPConfig, GreenFunction, GridFunction,
    InequalityReport, MLParams, PotentialSpec, Verdict,
};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::RngSeed;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        rng_seed: RngSeed::Fixed(0x6772),
        ..ProptestConfig::default()
    }
}

/// Largest admissible coupling: `Δ = D₀ - η k ε(ξ - a) > 0`.
fn eta_limit(p: &MLParams, a: f64, b: f64, xi: f64) -> f64 {
    kernel_eval(b - a, p, 1).unwrap() / (p.k * kernel_eval(xi - a, p, 0).unwrap())
}

prop_compose! {
    /// `ω, γ ≥ 0` on a random interval with a random admissible coupling.
    fn nonnegative_config()(
        k in 0.7f64..1.6,
        rho in 0.4f64..1.6,
        order in 2.05f64..3.0,
        gamma in 0.0f64..1.2,
        omega in 0.0f64..0.8,
        a in -1.0f64..1.0,
        len in 0.5f64..2.0,
        xi_frac in 0.1f64..0.9,
        eta_frac in 0.0f64..0.9,
    ) -> BVPConfig {
        let params = MLParams::new(k, rho, order * k, gamma, omega).unwrap();
        let (b, xi) = (a + len, a + xi_frac * len);
        let eta = eta_frac * eta_limit(&params, a, b, xi);
        BVPConfig { a, b, xi, eta, params }
    }
}

prop_compose! {
    /// As above with `ω = 0` or `γ = 0`, where the kernel is a pure power.
    fn power_kernel_config()(c in nonnegative_config(), drop_omega in any::<bool>()) -> BVPConfig {
        let mut params = c.params;
        if drop_omega { params.omega = 0.0 } else { params.gamma = 0.0 }
        let eta = c.eta.min(0.9 * eta_limit(&params, c.a, c.b, c.xi));
        BVPConfig { eta, params, ..c }
    }
}

prop_compose! {
    fn rl_config()(
        beta in 2.05f64..3.0,
        xi in 0.1f64..0.9,
        eta_frac in 0.0f64..0.95,
    ) -> BVPConfig {
        let params = MLParams::new(1.0, 1.0, beta, 0.0, 0.0).unwrap();
        let eta = eta_frac * eta_limit(&params, 0.0, 1.0, xi);
        BVPConfig { a: 0.0, b: 1.0, xi, eta, params }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn green_properties_hold_for_power_kernels(c in power_kernel_config()) {
        let g = GreenFunction::new(&c).unwrap();
        let report = g.grid(40).unwrap().report(1e-12);
        prop_assert!(report.passed(), "{c:?}: {report:?}");
        prop_assert!(g.amplification() >= 1.0);
    }

    #[test]
    fn green_is_nonnegative(c in nonnegative_config()) {
        let g = GreenFunction::new(&c).unwrap();
        let report = g.grid(40).unwrap().report(1e-12);
        prop_assert_eq!(report.nonnegativity_violations, 0, "{:?}: {:?}", c, report);
        prop_assert_eq!(report.diagonal_violations, 0);
        prop_assert!(g.amplification() >= 1.0);
    }

    #[test]
    fn boundary_row_and_column(c in nonnegative_config(), u in 0.0f64..1.0) {
        let g = GreenFunction::new(&c).unwrap();
        let s = c.a + u * (c.b - c.a);
        prop_assert_eq!(g.eval(c.a, s).unwrap(), 0.0);
        prop_assert_eq!(g.eval(s, c.b).unwrap(), 0.0);
    }

    #[test]
    fn riemann_liouville_value_at_b(c in rl_config(), s in 0.0f64..1.0) {
        // k = 1, ω = 0: G(b, s) Γ(β) = (b - s)^{β-2} (s - a).
        let g = GreenFunction::new(&c).unwrap();
        let beta = c.params.beta;
        let got = g.eval(1.0, s).unwrap() * k_gamma(beta, 1.0);
        let expect = (1.0 - s).powf(beta - 2.0) * s;
        prop_assert!((got - expect).abs() <= 1e-10, "{got} vs {expect}");
    }

    #[test]
    fn hw_rhs_reduces_to_classical_bound(c in rl_config()) {
        let report = hw_check(&PotentialSpec::Constant(1.0), &c).unwrap();
        let beta = c.params.beta;
        let classical = cabrera_rhs(beta, 0.0, 1.0, c.xi, c.eta).unwrap();
        prop_assert!(rel(report.rhs * k_gamma(beta, 1.0), classical) <= 1e-10);
    }

    #[test]
    fn hw_lhs_is_absolutely_homogeneous(c in nonnegative_config(), scale in -4.0f64..4.0) {
        let q = PotentialSpec::Polynomial(vec![0.3, -1.0, 0.5]);
        let base = hw_lhs(&q, &c, &default_rule()).unwrap();
        let scaled = hw_lhs(&q.scaled(scale), &c, &default_rule()).unwrap();
        prop_assert!((scaled - scale.abs() * base).abs() <= 1e-12 * base.max(1e-300) * scale.abs().max(1.0));
    }

    #[test]
    fn hw_lhs_is_monotone_in_abs_q(
        c in nonnegative_config(),
        base in prop::collection::vec(0.0f64..3.0, 9),
        bump in prop::collection::vec(0.0f64..1.0, 9),
        flip in any::<bool>(),
    ) {
        let nodes: Vec<f64> = (0..9).map(|i| c.a + (c.b - c.a) * i as f64 / 8.0).collect();
        let sign = if flip { -1.0 } else { 1.0 };
        let small: Vec<f64> = base.iter().map(|v| sign * v).collect();
        let large: Vec<f64> = base.iter().zip(&bump).map(|(v, d)| v + d).collect();
        let q1 = PotentialSpec::Samples(GridFunction::new(nodes.clone(), small).unwrap());
        let q2 = PotentialSpec::Samples(GridFunction::new(nodes, large).unwrap());
        let l1 = hw_lhs(&q1, &c, &default_rule()).unwrap();
        let l2 = hw_lhs(&q2, &c, &default_rule()).unwrap();
        prop_assert!(l1 <= l2 + 1e-12, "{l1} > {l2}");
    }

    #[test]
    fn verdict_follows_margin_sign(lhs in 0.0f64..10.0, rhs in 0.0f64..10.0) {
        let r = InequalityReport::new(lhs, rhs);
        prop_assert_eq!(r.margin, lhs - rhs);
        let expected = if lhs < rhs { Verdict::NoNontrivialSolutionCertified } else { Verdict::NecessaryConditionHolds };
        prop_assert_eq!(r.verdict, expected);
    }
}

/// Configurations outside the hypotheses used for hard assertions: `ω < 0`,
/// `γ < 0`, or `ρ > k`. Violations are printed, not asserted.
#[test]
fn report_properties_outside_hard_battery() {
    let mut lines = Vec::new();
    for (k, rho, gamma, omega) in [
        (1.0, 1.0, 0.7, -0.5),
        (0.8, 1.0, -0.3, 0.0),
        (1.6, 1.5, -0.3, -0.5),
        (0.8, 1.5, 0.7, 0.5),
        (1.0, 1.8, 0.7, 0.5),
    ] {
        let params = MLParams::new(k, rho, 2.5 * k, gamma, omega).unwrap();
        let c = BVPConfig { a: 0.0, b: 1.0, xi: 0.5, eta: 0.3, params };
        let Ok(g) = GreenFunction::new(&c) else {
            lines.push(format!("(k={k}, ρ={rho}, γ={gamma}, ω={omega}): degenerate"));
            continue;
        };
        let r = g.grid(60).unwrap().report(1e-12);
        lines.push(format!(
            "(k={k}, ρ={rho}, γ={gamma}, ω={omega}): nonnegativity {}, monotonicity {}, bracketing {}, diagonal {}",
            r.nonnegativity_violations, r.monotonicity_violations, r.bracketing_violations, r.diagonal_violations
        ));
        assert_eq!(r.diagonal_violations, 0, "the two branches must agree on the diagonal");
    }
    println!("{}", lines.join("\n"));
}

/// Monotonicity in `t` across random `ω, γ ≥ 0` configurations. It fails on
/// part of this set, so the counts are printed rather than asserted.
#[test]
fn report_monotonicity_for_nonnegative_parameters() {
    let mut runner = proptest::test_runner::TestRunner::new(config(40));
    let mut failing = Vec::new();
    let mut total = 0;
    for _ in 0..40 {
        let c = nonnegative_config().new_tree(&mut runner).unwrap().current();
        let r = GreenFunction::new(&c).unwrap().grid(40).unwrap().report(1e-12);
        total += 1;
        if r.monotonicity_violations + r.bracketing_violations > 0 {
            let p = c.params;
            failing.push(format!(
                "k={:.3} ρ/k={:.3} β/k={:.3} γ={:.3} ω={:.3} b-a={:.3}: monotonicity {}, bracketing {}",
                p.k, p.rho / p.k, p.order(), p.gamma, p.omega, c.b - c.a,
                r.monotonicity_violations, r.bracketing_violations
            ));
        }
    }
    println!("{}/{total} configurations monotone in t", total - failing.len());
    for line in &failing {
        println!("  {line}");
    }
}

/// `G(·, s)` need not be monotone once `ρ > k`: near `t = b` it decreases.
#[test]
fn monotonicity_can_fail_for_rho_above_k() {
    let params = MLParams::new(0.8, 1.5, 1.8, 0.7, 0.5).unwrap();
    let c = BVPConfig { a: 0.0, b: 1.0, xi: 0.5, eta: 0.3, params };
    let g = GreenFunction::new(&c).unwrap();
    let s = 0.01;
    let (before, at_b) = (g.eval(0.99, s).unwrap(), g.eval(1.0, s).unwrap());
    assert!(before > at_b, "{before} <= {at_b}");
}

/// Also with `ρ < k`: `β/k` close to 2 on a long interval.
#[test]
fn monotonicity_can_fail_for_order_near_two() {
    let params = MLParams::new(1.5638903466812668, 0.6255561386725068, 3.2059752106965966, 0.3220416222820724, 0.7587410400701721)
        .unwrap();
    let c = BVPConfig { a: 0.0, b: 1.959615624599569, xi: 0.1959615624599569, eta: 0.0, params };
    let g = GreenFunction::new(&c).unwrap();
    let s = 0.489903906149892;
    // Independent high-precision values of G(1, s) and G(1.5, s).
    let (g1, g15) = (g.eval(1.0, s).unwrap(), g.eval(1.5, s).unwrap());
    assert!(rel(g1, 0.187_849_700_699_109_2) < 1e-12, "{g1}");
    assert!(rel(g15, 0.184_207_669_812_100_3) < 1e-12, "{g15}");
    assert!(g1 > g15);
}
