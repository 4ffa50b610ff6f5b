use ladm_core::oracle::pde_residual_fd;
use ladm_core::solver::{self, order_magnitudes, residual};
use ladm_core::{reference_beta, Complex64, EquationModel, HarmonicPoly, TimeSeries};
use proptest::prelude::*;

/// Plane wave `β e^{i(β⁴−1)t} e^{ix}`, expanded: `uₙ = β (i(β⁴−1)t)ⁿ / n! · e^{ix}`.
fn plane_wave_iterate(beta: f64, n: usize) -> Complex64 {
    let rate = Complex64::new(0.0, beta.powi(4) - 1.0);
    let fact: f64 = (1..=n).map(|j| j as f64).product();
    beta * rate.powi(n as i32) / fact
}

#[test]
fn iterates_match_plane_wave_expansion() {
    let beta = reference_beta();
    let run = solver::run(&EquationModel::kundu_eckhaus(), beta, 1, 6).unwrap();
    for (n, u) in run.iterates.iter().enumerate() {
        assert_eq!(u.powers(), vec![n]);
        assert_eq!(u.coeff(n).support(), vec![1], "u_{n}");
        assert!(
            (u.coeff(n).coeff(1) - plane_wave_iterate(beta, n)).norm() < 1e-12,
            "u_{n}"
        );
    }
}

#[test]
fn iterates_satisfy_the_pde_pointwise_through_order_k() {
    // The plane wave is an exact solution, so the FD residual of the truncation shrinks with k.
    let beta = reference_beta();
    let model = EquationModel::kundu_eckhaus();
    let r4 = solver::run(&model, beta, 1, 4).unwrap();
    let r8 = solver::run(&model, beta, 1, 8).unwrap();
    let d4 = pde_residual_fd(|x, t| r4.eval(x, t), 0.5, 0.3, 1e-4);
    let d8 = pde_residual_fd(|x, t| r8.eval(x, t), 0.5, 0.3, 1e-4);
    assert!(d8 < d4);
    assert!(d8 < 1e-6);
}

#[test]
fn residual_annihilates_orders_below_k() {
    let model = EquationModel::kundu_eckhaus();
    for k in 1..=6 {
        let run = solver::run(&model, reference_beta(), 1, k).unwrap();
        let mags = order_magnitudes(&residual(&model, &run.truncated));
        for (m, &mag) in mags.iter().enumerate() {
            if m < k {
                assert!(mag < 1e-9, "k={k} order {m}: {mag}");
            }
        }
        assert!(mags.get(k).copied().unwrap_or(0.0) > 1e-9, "k={k} order {k} survives");
    }
}

#[test]
fn beta_one_is_stationary() {
    let run = solver::run(&EquationModel::kundu_eckhaus(), 1.0, 1, 4).unwrap();
    assert!(run.iterates[1..].iter().all(|u| u.max_abs() < 1e-14));
}

#[test]
fn corrections_carry_the_one_minus_beta4_factor() {
    let model = EquationModel::kundu_eckhaus();
    let near = solver::run(&model, 1.0 + 1e-9, 1, 4).unwrap();
    for u in &near.iterates[1..] {
        assert!(u.max_abs() < 1e-8);
    }
    let beta = reference_beta();
    let run = solver::run(&model, beta, 1, 4).unwrap();
    let factor = 1.0 - beta.powi(4);
    for (n, u) in run.iterates.iter().enumerate().skip(1) {
        let ratio = u.coeff(n).coeff(1) / factor.powi(n as i32);
        let fact: f64 = (1..=n).map(|j| j as f64).product();
        let want = beta * Complex64::new(0.0, -1.0).powi(n as i32) / fact;
        assert!((ratio - want).norm() < 1e-9, "u_{n}");
    }
}

#[test]
fn higher_harmonic_initial_condition() {
    // u = β e^{i(β⁴ − h²)t} e^{ihx}
    let (beta, h) = (0.8, 3);
    let run = solver::run(&EquationModel::kundu_eckhaus(), beta, h, 8).unwrap();
    let rate = Complex64::new(0.0, beta.powi(4) - (h * h) as f64);
    let t = 0.05;
    let exact = beta * (rate * t).exp() * Complex64::new(0.0, h as f64 * 0.4).exp();
    assert!((run.eval(0.4, t) - exact).norm() < 1e-6);
}

#[test]
fn non_plane_wave_initial_condition_annihilates_low_orders() {
    let model = EquationModel::kundu_eckhaus();
    let u0 = TimeSeries::constant(HarmonicPoly::from_terms([
        (1, Complex64::new(0.6, 0.0)),
        (-2, Complex64::new(0.1, 0.2)),
    ]));
    let iterates = solver::iterate_from(&model, u0, 3).unwrap();
    let truncated = TimeSeries::sum(&iterates);
    let mags = order_magnitudes(&residual(&model, &truncated));
    let scale = mags.iter().copied().fold(1.0, f64::max);
    for &mag in &mags[..3] {
        assert!(mag < 1e-12 * scale);
    }
}

#[test]
fn invalid_amplitudes_are_rejected() {
    let model = EquationModel::kundu_eckhaus();
    assert!(solver::run(&model, 0.0, 1, 4).is_err());
    assert!(solver::run(&model, f64::NAN, 1, 4).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn plane_wave_iterates_for_any_amplitude(beta in 0.5f64..1.2, h in -3i64..=3) {
        let run = solver::run(&EquationModel::kundu_eckhaus(), beta, h, 4).unwrap();
        let rate = Complex64::new(0.0, beta.powi(4) - (h * h) as f64);
        let mut expected = Complex64::new(beta, 0.0);
        for (n, u) in run.iterates.iter().enumerate() {
            if n > 0 {
                expected = expected * rate / n as f64;
            }
            let got = u.coeff(n).coeff(h);
            prop_assert!((got - expected).norm() <= 1e-12 * expected.norm().max(1.0));
            prop_assert!(u.coeff(n).len() <= 1);
        }
    }
}
