#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use rand::Rng;
use spinforge_core::{
    constant_b3_field, constant_b3_field_from_alpha, AngleProgram, BlochVector, FieldProgram,
    RotationProgram, Term, Vec3,
};

pub const STEPS: usize = 20_000;

/// Constant-`b3` evolution loop with `n(0) = (sin theta, 0, cos theta)`.
pub struct ConstantB3Loop {
    pub b0: f64,
    pub chi: f64,
    pub alpha: AngleProgram,
    pub beta: AngleProgram,
    pub field: FieldProgram,
    pub theta: f64,
    pub tau: f64,
}

impl ConstantB3Loop {
    pub fn program(&self) -> RotationProgram {
        RotationProgram::new(self.chi, self.alpha.clone(), self.beta.clone()).unwrap()
    }

    pub fn n0(&self) -> BlochVector {
        BlochVector::from_angles(self.theta, 0.0)
    }
}

/// `beta(t) = a lambda sin(alpha0 t) + (lambda alpha1 - b0) t` with
/// `b0 = 3`, `lambda = 4/5`, `tau = 2 pi`, `n(0) = (sqrt(3)/2, 0, 1/2)`.
pub fn sinusoidal_loop(a: f64, alpha1: f64, alpha0: f64) -> ConstantB3Loop {
    let (b0, lambda) = (3.0, 0.8);
    let beta = AngleProgram::new(vec![
        Term::Sinusoid { amp: a * lambda, freq: alpha0 },
        Term::Linear(lambda * alpha1 - b0),
    ])
    .unwrap();
    let chi = f64::acos(lambda);
    let (field, alpha) = constant_b3_field(b0, &beta, chi).unwrap();
    ConstantB3Loop { b0, chi, alpha, beta, field, theta: PI / 3.0, tau: TAU }
}

/// Periodic loop: `a = 0.7`, `alpha1 = alpha0 = 5`.
pub fn periodic_loop() -> ConstantB3Loop {
    sinusoidal_loop(0.7, 5.0, 5.0)
}

/// Aperiodic loop: `a = 1`, `alpha1 = 5 - 1/(2 pi)`, `alpha0 = 9/4`.
pub fn aperiodic_loop() -> ConstantB3Loop {
    sinusoidal_loop(1.0, 5.0 - 1.0 / TAU, 2.25)
}

/// Quadratic `alpha(t) = alpha0 t^2`, `alpha0 = 5/(2 pi)`, `b0 = 3`, `lambda = 4/5`.
pub fn quadratic_loop() -> ConstantB3Loop {
    let (b0, lambda) = (3.0, 0.8);
    let chi = f64::acos(lambda);
    let alpha = AngleProgram::quadratic(5.0 / TAU);
    let (field, beta) = constant_b3_field_from_alpha(b0, &alpha, chi).unwrap();
    ConstantB3Loop { b0, chi, alpha, beta, field, theta: PI / 3.0, tau: TAU }
}

pub fn random_unit<R: Rng>(rng: &mut R) -> BlochVector {
    let z: f64 = rng.gen_range(-1.0..1.0);
    let phi: f64 = rng.gen_range(0.0..TAU);
    BlochVector::from_angles(z.acos(), phi)
}

/// One to three random terms with moderate rates.
pub fn random_program<R: Rng>(rng: &mut R) -> AngleProgram {
    let count = rng.gen_range(1..=3);
    let terms = (0..count)
        .map(|_| match rng.gen_range(0..3) {
            0 => Term::Linear(rng.gen_range(-3.0..3.0)),
            1 => Term::Quadratic(rng.gen_range(-0.4..0.4)),
            _ => Term::Sinusoid { amp: rng.gen_range(-1.0..1.0), freq: rng.gen_range(0.2..3.0) },
        })
        .collect();
    AngleProgram::new(terms).unwrap()
}

pub fn random_rotation_program<R: Rng>(rng: &mut R, max_chi: f64) -> RotationProgram {
    let chi = rng.gen_range(0.0..max_chi);
    RotationProgram::new(chi, random_program(rng), random_program(rng)).unwrap()
}

/// `b_k(t) = c_k + sum_j a_kj sin(w_kj t + p_kj)`.
pub fn random_smooth_field<R: Rng>(rng: &mut R) -> FieldProgram {
    let mut comps = Vec::new();
    for _ in 0..3 {
        let offset: f64 = rng.gen_range(-1.5..1.5);
        let modes: Vec<(f64, f64, f64)> = (0..2)
            .map(|_| (rng.gen_range(-1.5..1.5), rng.gen_range(0.1..3.0), rng.gen_range(0.0..TAU)))
            .collect();
        comps.push((offset, modes));
    }
    FieldProgram::symbolic("random smooth", move |t: f64| {
        let c = |k: usize| {
            let (offset, modes) = &comps[k];
            offset + modes.iter().map(|(a, w, p)| a * (w * t + p).sin()).sum::<f64>()
        };
        Vec3::new(c(0), c(1), c(2))
    })
}

/// Third component of a field as a standalone function.
pub fn third_component(field: &FieldProgram) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    let f = field.clone();
    move |t| f.eval(t).z
}
