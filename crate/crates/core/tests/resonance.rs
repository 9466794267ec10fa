mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinforge_core::resonance::{
    probability_from_trajectory, resonance_times, transition_probability, ResonanceModel,
};
use spinforge_core::{integrate_bloch, AngleProgram, BlochVector, SpinError, Term, TimeGrid};

use common::*;

fn numeric_profile(model: &ResonanceModel<f64>, tau: f64) -> (TimeGrid, Vec<f64>) {
    let grid = TimeGrid::new(tau, STEPS).unwrap();
    let traj = integrate_bloch(&model.field(), BlochVector::north(), &grid).unwrap();
    let p = (0..grid.len()).map(|i| probability_from_trajectory(&traj, i)).collect();
    (grid, p)
}

#[test]
fn uniform_model_closed_form_matches_integration() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let alpha0 = rng.gen_range(0.5..6.0);
        let beta0 = rng.gen_range(-6.0..6.0);
        let chi = rng.gen_range(0.0..PI);
        let model = ResonanceModel::uniform(alpha0, beta0, chi).unwrap();
        let (grid, p) = numeric_profile(&model, 5.0);
        for (i, &pn) in p.iter().enumerate() {
            let pc = transition_probability(&model, grid.time(i));
            assert!((pc - pn).abs() < 1e-5, "alpha0 {alpha0} beta0 {beta0} chi {chi}");
        }
    }
}

#[test]
fn constant_b3_closed_form_matches_integration() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..10 {
        let b0 = rng.gen_range(-3.0..3.0);
        let chi = rng.gen_range(0.1..1.4);
        let beta = AngleProgram::new(vec![
            Term::Sinusoid { amp: rng.gen_range(-1.0..1.0), freq: rng.gen_range(0.5..3.0) },
            Term::Linear(rng.gen_range(-2.0..2.0)),
        ])
        .unwrap();
        let model = ResonanceModel::constant_b3(b0, beta, chi).unwrap();
        let (grid, p) = numeric_profile(&model, 4.0);
        for (i, &pn) in p.iter().enumerate() {
            assert!((transition_probability(&model, grid.time(i)) - pn).abs() < 1e-5);
        }
    }
}

#[test]
fn probability_bounded_by_axis_overlap() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..200 {
        let chi = rng.gen_range(0.0..PI);
        let model = ResonanceModel::uniform(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), chi).unwrap();
        let bound = 1.0 - chi.cos().powi(2);
        let t = rng.gen_range(0.0..20.0);
        let p = transition_probability(&model, t);
        assert!((0.0..=bound + 1e-15).contains(&p));
    }
}

#[test]
fn probability_independent_of_transverse_rotation_rate() {
    let (alpha0, chi) = (2.5, 1.1);
    let reference = numeric_profile(&ResonanceModel::uniform(alpha0, 0.0, chi).unwrap(), 4.0).1;
    for beta0 in [-3.0, 1.7, 8.0] {
        let p = numeric_profile(&ResonanceModel::uniform(alpha0, beta0, chi).unwrap(), 4.0).1;
        let gap = p.iter().zip(&reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(gap < 1e-5, "beta0 {beta0}: {gap}");
    }
}

#[test]
fn full_transfer_only_with_orthogonal_axes() {
    let alpha0 = 2.0;
    let model = ResonanceModel::uniform(alpha0, 5.0, FRAC_PI_2).unwrap();
    let times = resonance_times(&model, 3).unwrap();
    assert_eq!(times.len(), 4);
    let (grid, p) = numeric_profile(&model, times[3] + 0.1);
    for t in &times {
        let i = (t / grid.dt()).round() as usize;
        assert!((grid.time(i) - t).abs() < grid.dt());
        assert!((transition_probability(&model, *t) - 1.0).abs() < 1e-12);
        assert!(p[i] > 1.0 - 1e-5);
    }
    let max = p.iter().cloned().fold(0.0, f64::max);
    assert!(max <= 1.0);

    let tilted = ResonanceModel::uniform(alpha0, 5.0, 1.2).unwrap();
    assert!(matches!(resonance_times(&tilted, 3), Err(SpinError::NotMaximalResonance { .. })));
    let (_, p) = numeric_profile(&tilted, 2.0 * TAU / alpha0);
    let peak = p.iter().cloned().fold(0.0, f64::max);
    assert!((peak - (1.0 - 1.2_f64.cos().powi(2))).abs() < 1e-5);
}

#[test]
fn orthogonal_constant_b3_model_from_alpha() {
    let model = ResonanceModel::constant_b3_from_alpha(2.0, AngleProgram::quadratic(0.5), FRAC_PI_2).unwrap();
    let (grid, p) = numeric_profile(&model, 4.0);
    for (i, &pn) in p.iter().enumerate() {
        assert!((transition_probability(&model, grid.time(i)) - pn).abs() < 1e-5);
    }
    assert!(matches!(
        ResonanceModel::constant_b3(2.0, AngleProgram::linear(1.0), FRAC_PI_2),
        Err(SpinError::ChiDegenerate { .. })
    ));
}

#[test]
fn periodic_loop_probability_at_half_period() {
    let lp = periodic_loop();
    let model = ResonanceModel::constant_b3(lp.b0, lp.beta.clone(), lp.chi).unwrap();
    // alpha(pi) = 5 pi, so P = 1 - lambda^2
    assert!((transition_probability(&model, PI) - 0.36).abs() < 1e-12);
    let (grid, p) = numeric_profile(&model, TAU);
    let half = grid.steps() / 2;
    assert!((p[half] - 0.36).abs() < 1e-5);
}
