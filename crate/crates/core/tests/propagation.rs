mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinforge_core::propagate::{bloch_path, bloch_step, spinor_step};
use spinforge_core::su2::Mat2;
use spinforge_core::{
    bloch_from_spinor, integrate_bloch, integrate_propagator, integrate_spinor, two_axis_field_invariant,
    AngleProgram, BlochVector, FieldProgram, RotationProgram, Spinor, TimeGrid, Vec3,
};

use common::*;

fn uniform_field(lambda: f64, alpha0: f64, beta0: f64) -> FieldProgram {
    let prog =
        RotationProgram::from_lambda(lambda, AngleProgram::linear(alpha0), AngleProgram::linear(beta0))
            .unwrap();
    two_axis_field_invariant(&prog)
}

#[test]
fn rotating_field_population_inversion_profile() {
    let (lambda, alpha0) = (0.8, 5.0);
    for beta0 in [0.0, 2.3, -4.0] {
        let field = uniform_field(lambda, alpha0, beta0);
        let grid = TimeGrid::new(TAU, STEPS).unwrap();
        let traj = integrate_bloch(&field, BlochVector::north(), &grid).unwrap();
        for (i, n) in traj.samples().iter().enumerate() {
            let t = grid.time(i);
            // n3 = 1 - 2P with P = (1 - lambda^2)(1 - cos alpha0 t)/2
            let expected = 1.0 - (1.0 - lambda * lambda) * (1.0 - (alpha0 * t).cos());
            assert!((n.z() - expected).abs() < 1e-5, "t = {t}");
        }
    }
}

#[test]
fn constant_field_full_turn_is_minus_identity() {
    let b0 = 1.7;
    let field = FieldProgram::constant(Vec3::new(0.0, 0.0, b0));
    let grid = TimeGrid::new(TAU / b0, STEPS).unwrap();
    let u = integrate_propagator(&field, &grid).unwrap();
    let minus = Mat2::<f64>::identity().scale(Complex::new(-1.0, 0.0));
    assert!(u.last().matrix().distance(&minus) < 1e-6);
    assert_eq!(u.samples()[0].matrix(), &Mat2::identity());
}

#[test]
fn spinor_phase_under_constant_field() {
    let b0 = 2.4;
    let field = FieldProgram::constant(Vec3::new(0.0, 0.0, b0));
    let grid = TimeGrid::new(3.0, STEPS).unwrap();
    let path = integrate_spinor(&field, Spinor::plus(), &grid).unwrap();
    for (i, psi) in path.iter().enumerate() {
        // exp(i t b0 sigma_z / 2) |+> = e^{i b0 t / 2} |+>
        let expected = Complex::from_polar(1.0, b0 * grid.time(i) / 2.0);
        assert!((psi.up() - expected).norm() < 1e-6);
        assert!(psi.down().norm() < 1e-12);
    }
}

#[test]
fn orthogonal_axes_complete_transfer() {
    let alpha0 = 3.0;
    let field = uniform_field(0.0, alpha0, 1.1);
    let grid = TimeGrid::new(PI / alpha0, STEPS).unwrap();
    let path = integrate_spinor(&field, Spinor::plus(), &grid).unwrap();
    let p = Spinor::minus().inner(path.last().unwrap()).norm_sqr();
    assert!((p - 1.0).abs() < 1e-5);
}

#[test]
fn spinor_and_bloch_pictures_agree_on_loop_field() {
    let lp = periodic_loop();
    let grid = TimeGrid::new(lp.tau, STEPS).unwrap();
    let psi0 = Spinor::from_bloch(lp.n0());
    let us = integrate_propagator(&lp.field, &grid).unwrap();
    let bloch = integrate_bloch(&lp.field, lp.n0(), &grid).unwrap();
    for (u, n) in us.samples().iter().zip(bloch.samples()) {
        let from_u = bloch_from_spinor(&u.apply(&psi0));
        assert!(from_u.vector().max_abs_diff(n.vector()) < 1e-5);
    }
}

#[test]
fn picture_equivalence_for_random_fields() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let grid = TimeGrid::new(4.0, STEPS).unwrap();
    for _ in 0..10 {
        let field = random_smooth_field(&mut rng);
        let n0 = random_unit(&mut rng);
        let psi0 = Spinor::from_bloch(n0).with_phase(0.3);
        let path = integrate_spinor(&field, psi0, &grid).unwrap();
        let via_spinor = bloch_path(&grid, &path).unwrap();
        let direct = integrate_bloch(&field, n0, &grid).unwrap();
        assert!(via_spinor.max_deviation(&direct) < 1e-5);
    }
}

#[test]
fn raw_steps_conserve_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let field = random_smooth_field(&mut rng);
    let grid = TimeGrid::new(TAU, STEPS).unwrap();
    let h = grid.dt();
    let mut n = random_unit(&mut rng).vector();
    let mut psi = [Complex::new(0.6, 0.0), Complex::new(0.0, 0.8)];
    let (mut worst_n, mut worst_psi) = (0.0_f64, 0.0_f64);
    for i in 0..grid.steps() {
        let t = grid.time(i);
        n = bloch_step(&field, n, t, h).unwrap();
        psi = spinor_step(&field, psi, t, h).unwrap();
        worst_n = worst_n.max((n.norm() - 1.0).abs());
        worst_psi = worst_psi.max(((psi[0].norm_sqr() + psi[1].norm_sqr()).sqrt() - 1.0).abs());
    }
    assert!(worst_n < 1e-6, "Bloch norm drift {worst_n}");
    assert!(worst_psi < 1e-6, "spinor norm drift {worst_psi}");
}

#[test]
fn propagator_samples_stay_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let field = random_smooth_field(&mut rng);
    let grid = TimeGrid::new(5.0, 5000).unwrap();
    let us = integrate_propagator(&field, &grid).unwrap();
    for u in us.samples() {
        assert!(spinforge_core::su2::unitarity_defect(u.matrix()) < 1e-6);
    }
}

/// Final-time error against exact precession about a tilted constant field.
fn constant_field_error(steps: usize) -> f64 {
    let b = Vec3::new(12.0, -20.0, 40.0);
    let field = FieldProgram::constant(b);
    let tau = 1.0;
    let n0 = BlochVector::from_angles(1.0, 0.4);
    let grid = TimeGrid::new(tau, steps).unwrap();
    let traj = integrate_bloch(&field, n0, &grid).unwrap();
    // dn/dt = -b x n: rotation by -|b| t about b
    let exact = spinforge_core::SO3Matrix::about_axis(b, -b.norm() * tau).apply(n0.vector());
    (traj.last().vector() - exact).norm()
}

#[test]
fn fourth_order_convergence() {
    let errors: Vec<f64> = [1000, 2000, 4000].iter().map(|&s| constant_field_error(s)).collect();
    for w in errors.windows(2) {
        let ratio = w[0] / w[1];
        assert!((8.0..32.0).contains(&ratio), "ratio {ratio}, errors {errors:?}");
    }
}

#[test]
fn field_scaling_equals_time_scaling() {
    let b = Vec3::new(0.4, -1.1, 0.7);
    let c = 3.0;
    let n0 = BlochVector::from_angles(0.9, 2.0);
    let slow = integrate_bloch(&FieldProgram::constant(b), n0, &TimeGrid::new(2.0, 4000).unwrap()).unwrap();
    let fast =
        integrate_bloch(&FieldProgram::constant(b * c), n0, &TimeGrid::new(2.0 / c, 4000).unwrap()).unwrap();
    assert!(slow.max_deviation(&fast) < 1e-10);
}

#[test]
fn sampled_field_matches_symbolic_source() {
    let lp = periodic_loop();
    let grid = TimeGrid::new(lp.tau, STEPS).unwrap();
    let times: Vec<f64> = grid.times().collect();
    let values = times.iter().map(|&t| lp.field.eval(t)).collect();
    let sampled = FieldProgram::sampled(times, values).unwrap();
    let a = integrate_bloch(&lp.field, lp.n0(), &grid).unwrap();
    let b = integrate_bloch(&sampled, lp.n0(), &grid).unwrap();
    assert!(a.max_deviation(&b) < 1e-4);
}

#[test]
fn zero_field_quarter_period_noop() {
    let grid = TimeGrid::new(FRAC_PI_2, 10).unwrap();
    let u = integrate_propagator(&FieldProgram::zero(), &grid).unwrap();
    assert!(u.last().matrix().distance(&Mat2::identity()) < 1e-15);
}
