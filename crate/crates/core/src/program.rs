//! Symbolic angle programs and two-axis rotation programs.
//!
//! An [`AngleProgram`] is a finite sum of linear, quadratic and sinusoidal
//! terms. Every such term vanishes at `t = 0`, so a program always satisfies
//! the consistency requirement `R(0) = 1` of the rotation built from it, and
//! its derivative is available in closed form.

use crate::error::{Result, SpinError};
use crate::scalar::Real;
use crate::so3::SO3Matrix;
use crate::vector::{BlochVector, Vec3};

/// One additive term of an [`AngleProgram`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Term<T> {
    /// `c t`
    Linear(T),
    /// `c t^2`
    Quadratic(T),
    /// `amp sin(freq t)`
    Sinusoid { amp: T, freq: T },
}

impl<T: Real> Term<T> {
    #[inline]
    pub fn eval(&self, t: T) -> T {
        match *self {
            Term::Linear(c) => c * t,
            Term::Quadratic(c) => c * t * t,
            Term::Sinusoid { amp, freq } => amp * (freq * t).sin(),
        }
    }

    #[inline]
    pub fn derivative(&self, t: T) -> T {
        match *self {
            Term::Linear(c) => c,
            Term::Quadratic(c) => T::two() * c * t,
            Term::Sinusoid { amp, freq } => amp * freq * (freq * t).cos(),
        }
    }

    fn scaled(&self, s: T) -> Self {
        match *self {
            Term::Linear(c) => Term::Linear(c * s),
            Term::Quadratic(c) => Term::Quadratic(c * s),
            Term::Sinusoid { amp, freq } => Term::Sinusoid { amp: amp * s, freq },
        }
    }

    fn is_finite(&self) -> bool {
        match *self {
            Term::Linear(c) | Term::Quadratic(c) => c.is_finite(),
            Term::Sinusoid { amp, freq } => amp.is_finite() && freq.is_finite(),
        }
    }
}

/// Angle as a function of time, zero at `t = 0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct AngleProgram<T> {
    terms: Vec<Term<T>>,
}

impl<T: Real> AngleProgram<T> {
    pub fn new(terms: Vec<Term<T>>) -> Result<Self> {
        if let Some(bad) = terms.iter().find(|t| !t.is_finite()) {
            return Err(SpinError::InvalidParameter(format!("non-finite program term {bad:?}")));
        }
        Ok(Self { terms })
    }

    /// The identically-zero program.
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn linear(rate: T) -> Self {
        Self { terms: vec![Term::Linear(rate)] }
    }

    pub fn quadratic(c: T) -> Self {
        Self { terms: vec![Term::Quadratic(c)] }
    }

    pub fn sinusoid(amp: T, freq: T) -> Self {
        Self { terms: vec![Term::Sinusoid { amp, freq }] }
    }

    pub fn terms(&self) -> &[Term<T>] {
        &self.terms
    }

    pub fn eval(&self, t: T) -> T {
        self.terms.iter().map(|term| term.eval(t)).sum()
    }

    pub fn derivative(&self, t: T) -> T {
        self.terms.iter().map(|term| term.derivative(t)).sum()
    }

    /// `s * self`.
    pub fn scaled(&self, s: T) -> Self {
        Self { terms: self.terms.iter().map(|t| t.scaled(s)).collect() }
    }

    /// `self + other`, concatenating term lists.
    pub fn plus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self { terms }
    }
}

/// Evaluates `p(t)`.
pub fn eval_program<T: Real>(p: &AngleProgram<T>, t: T) -> T {
    p.eval(t)
}

/// Evaluates `dp/dt` analytically.
pub fn eval_derivative<T: Real>(p: &AngleProgram<T>, t: T) -> T {
    p.derivative(t)
}

/// Simultaneous rotations by `beta(t)` about `z` and `alpha(t)` about the
/// axis `e_chi = (sin chi, 0, cos chi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationProgram<T> {
    chi: T,
    alpha: AngleProgram<T>,
    beta: AngleProgram<T>,
}

impl<T: Real> RotationProgram<T> {
    /// Requires `0 <= chi <= pi`.
    pub fn new(chi: T, alpha: AngleProgram<T>, beta: AngleProgram<T>) -> Result<Self> {
        if !(chi >= T::zero() && chi <= T::PI()) {
            return Err(SpinError::InvalidParameter(format!("chi = {} outside [0, pi]", chi.as_f64())));
        }
        Ok(Self { chi, alpha, beta })
    }

    /// Builds the program from `lambda = cos chi`, `-1 <= lambda <= 1`.
    pub fn from_lambda(lambda: T, alpha: AngleProgram<T>, beta: AngleProgram<T>) -> Result<Self> {
        if !(lambda.abs() <= T::one()) {
            return Err(SpinError::InvalidParameter(format!("lambda = {} outside [-1, 1]", lambda.as_f64())));
        }
        Self::new(lambda.acos(), alpha, beta)
    }

    pub fn chi(&self) -> T {
        self.chi
    }

    /// `cos chi`.
    pub fn lambda(&self) -> T {
        self.chi.cos()
    }

    /// `sin chi = sqrt(1 - lambda^2)` for `chi` in `[0, pi]`.
    pub fn transverse(&self) -> T {
        self.chi.sin()
    }

    pub fn alpha(&self) -> &AngleProgram<T> {
        &self.alpha
    }

    pub fn beta(&self) -> &AngleProgram<T> {
        &self.beta
    }

    /// Unit vector of the tilted rotation axis.
    pub fn axis(&self) -> Vec3<T> {
        Vec3::new(self.transverse(), T::zero(), self.lambda())
    }

    /// `R(t) = R3(beta) R2(chi) R3(-alpha) R2(-chi)`.
    pub fn rotation(&self, t: T) -> SO3Matrix<T> {
        rotation_matrix(self, t)
    }

    /// `n(t) = R(t) n0`.
    pub fn trajectory_point(&self, n0: BlochVector<T>, t: T) -> BlochVector<T> {
        self.rotation(t).rotate(n0)
    }
}

/// Rotation matrix of a two-axis program at time `t`.
///
/// `R2`, `R3` are active right-handed rotations about `y` and `z`, so the
/// inner block `R2(chi) R3(-alpha) R2(-chi)` turns by `-alpha` about `e_chi`.
/// With this choice the invariant-gauge field forward-integrates to
/// `R(t) n0`.
pub fn rotation_matrix<T: Real>(prog: &RotationProgram<T>, t: T) -> SO3Matrix<T> {
    let alpha = prog.alpha.eval(t);
    let beta = prog.beta.eval(t);
    SO3Matrix::about_z(beta)
        * SO3Matrix::about_y(prog.chi)
        * SO3Matrix::about_z(-alpha)
        * SO3Matrix::about_y(-prog.chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn linear_program_value() {
        assert!((eval_program(&AngleProgram::linear(5.0), TAU) - 10.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn quadratic_program_closes_at_ten_pi() {
        let alpha0 = 5.0 / TAU;
        let p = AngleProgram::quadratic(alpha0);
        assert!((eval_program(&p, TAU) - 10.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn sinusoid_vanishes_at_closure() {
        let a = 0.7;
        let lambda = 0.8;
        let p = AngleProgram::sinusoid(a * lambda, 5.0);
        assert!(eval_program(&p, TAU).abs() < 1e-14);
    }

    #[test]
    fn every_program_starts_at_zero() {
        let p = AngleProgram::new(vec![
            Term::Linear(2.0),
            Term::Quadratic(-0.3),
            Term::Sinusoid { amp: 1.5, freq: 7.0 },
        ])
        .unwrap();
        assert_eq!(p.eval(0.0), 0.0);
    }

    #[test]
    fn non_finite_terms_rejected() {
        assert!(AngleProgram::new(vec![Term::Linear(f64::NAN)]).is_err());
    }

    #[test]
    fn chi_range_enforced() {
        assert!(RotationProgram::new(-0.1, AngleProgram::zero(), AngleProgram::zero()).is_err());
        assert!(RotationProgram::new(3.2, AngleProgram::zero(), AngleProgram::zero()).is_err());
        assert!(RotationProgram::from_lambda(1.2, AngleProgram::zero(), AngleProgram::zero()).is_err());
    }

    #[test]
    fn identity_at_origin() {
        let p =
            RotationProgram::new(1.1, AngleProgram::linear(3.0), AngleProgram::sinusoid(0.4, 2.0)).unwrap();
        assert!(rotation_matrix(&p, 0.0).max_abs_diff(&SO3Matrix::identity()) < 1e-15);
    }

    #[test]
    fn aligned_axes_reduce_to_z_rotation() {
        let p = RotationProgram::new(
            0.0,
            AngleProgram::linear(1.7),
            AngleProgram::new(vec![Term::Linear(0.4), Term::Quadratic(0.2)]).unwrap(),
        )
        .unwrap();
        let t = 1.3;
        let net = p.beta().eval(t) - p.alpha().eval(t);
        assert!(rotation_matrix(&p, t).max_abs_diff(&SO3Matrix::about_z(net)) < 1e-14);
    }

    #[test]
    fn inner_block_turns_about_tilted_axis() {
        let p = RotationProgram::new(0.6, AngleProgram::linear(1.0), AngleProgram::zero()).unwrap();
        let r = rotation_matrix(&p, 0.9);
        assert!(r.max_abs_diff(&SO3Matrix::about_axis(p.axis(), -0.9)) < 1e-14);
        assert!(r.apply(p.axis()).max_abs_diff(p.axis()) < 1e-14);
    }
}
