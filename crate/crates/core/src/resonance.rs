//! Closed-form transition probabilities `|+> -> |->` for the rotating-field
//! resonance model and the constant-`b3` family.
//!
//! Both models start from `n(0) = (0, 0, 1)`. Their probabilities are
//! `P(t) = (1 - n3)/2 = (1 - lambda^2)(1 - cos alpha(t))/2`, so the bound
//! `1 - lambda^2` is reached only with orthogonal axes (`lambda = 0`).
//!
//! In the frame rotating with the transverse field the uniform model sees the
//! constant effective field `b_eff = alpha0 (sqrt(1 - lambda^2) i + lambda k)`,
//! about which the spin simply precesses:
//!
//! ```
//! use spinforge_core::{integrate_bloch, BlochVector, SO3Matrix, TimeGrid};
//! use spinforge_core::resonance::ResonanceModel;
//!
//! let (alpha0, beta0, chi) = (3.0, 1.2, 0.9_f64);
//! let model = ResonanceModel::uniform(alpha0, beta0, chi).unwrap();
//! let grid = TimeGrid::new(2.0, 4000).unwrap();
//! let traj = integrate_bloch(&model.field(), BlochVector::north(), &grid).unwrap();
//!
//! let axis = spinforge_core::Vec3::new(chi.sin(), 0.0, chi.cos());
//! for (i, n) in traj.samples().iter().enumerate().step_by(500) {
//!     let t = grid.time(i);
//!     let co_rotating = SO3Matrix::about_z(-beta0 * t).apply(n.vector());
//!     let precessed = SO3Matrix::about_axis(axis, -alpha0 * t).apply(BlochVector::north().vector());
//!     assert!(co_rotating.max_abs_diff(precessed) < 1e-9);
//! }
//! ```

use crate::error::{Result, SpinError};
use crate::field::FieldProgram;
use crate::program::{AngleProgram, RotationProgram};
use crate::propagate::BlochTrajectory;
use crate::scalar::Real;
use crate::synthesize::{constant_b3_field, constant_b3_field_from_alpha, two_axis_field_invariant, CHI_EPS};

/// Two exactly solvable resonance models.
#[derive(Debug, Clone, PartialEq)]
pub enum ResonanceModel<T> {
    /// `b = alpha0 sqrt(1 - lambda^2) [cos beta0 t, sin beta0 t, 0] + (lambda alpha0 - beta0) k`.
    Uniform { alpha0: T, beta0: T, chi: T },
    /// Field with constant third component `b0`; `program` carries `chi`,
    /// `beta` and the induced `alpha = (b0 t + beta)/lambda`.
    ConstantB3 { b0: T, program: RotationProgram<T> },
}

impl<T: Real> ResonanceModel<T> {
    pub fn uniform(alpha0: T, beta0: T, chi: T) -> Result<Self> {
        // validates chi
        RotationProgram::new(chi, AngleProgram::zero(), AngleProgram::zero())?;
        if !alpha0.is_finite() || !beta0.is_finite() {
            return Err(SpinError::InvalidParameter("non-finite rotation rate".into()));
        }
        Ok(ResonanceModel::Uniform { alpha0, beta0, chi })
    }

    /// Constant-`b3` model from its `beta` program. Fails with
    /// [`SpinError::ChiDegenerate`] when `cos chi = 0`.
    pub fn constant_b3(b0: T, beta: AngleProgram<T>, chi: T) -> Result<Self> {
        let (_, alpha) = constant_b3_field(b0, &beta, chi)?;
        let program = RotationProgram::new(chi, alpha, beta)?;
        Ok(ResonanceModel::ConstantB3 { b0, program })
    }

    /// Constant-`b3` model from its `alpha` program; valid for every `chi`,
    /// including orthogonal axes.
    pub fn constant_b3_from_alpha(b0: T, alpha: AngleProgram<T>, chi: T) -> Result<Self> {
        let (_, beta) = constant_b3_field_from_alpha(b0, &alpha, chi)?;
        let program = RotationProgram::new(chi, alpha, beta)?;
        Ok(ResonanceModel::ConstantB3 { b0, program })
    }

    pub fn chi(&self) -> T {
        match self {
            ResonanceModel::Uniform { chi, .. } => *chi,
            ResonanceModel::ConstantB3 { program, .. } => program.chi(),
        }
    }

    pub fn lambda(&self) -> T {
        self.chi().cos()
    }

    /// The rotation program realized by the model's field.
    pub fn program(&self) -> RotationProgram<T> {
        match self {
            ResonanceModel::Uniform { alpha0, beta0, chi } => {
                RotationProgram::new(*chi, AngleProgram::linear(*alpha0), AngleProgram::linear(*beta0))
                    .expect("chi validated at construction")
            }
            ResonanceModel::ConstantB3 { program, .. } => program.clone(),
        }
    }

    /// Rotation angle about the tilted axis at time `t`.
    pub fn alpha(&self, t: T) -> T {
        match self {
            ResonanceModel::Uniform { alpha0, .. } => *alpha0 * t,
            ResonanceModel::ConstantB3 { program, .. } => program.alpha().eval(t),
        }
    }

    /// Driving field of the model.
    pub fn field(&self) -> FieldProgram<T> {
        match self {
            ResonanceModel::Uniform { .. } => two_axis_field_invariant(&self.program()),
            ResonanceModel::ConstantB3 { b0, program } => {
                if program.lambda().abs() > T::lit(CHI_EPS) {
                    constant_b3_field(*b0, program.beta(), program.chi()).expect("lambda checked").0
                } else {
                    two_axis_field_invariant(program)
                }
            }
        }
    }
}

/// `P(t) = (1 - lambda^2)(1 - cos alpha(t))/2`.
pub fn transition_probability<T: Real>(model: &ResonanceModel<T>, t: T) -> T {
    let lambda = model.lambda();
    (T::one() - lambda * lambda) * (T::one() - model.alpha(t).cos()) * T::half()
}

/// `(1 - n3)/2` at node `index`, clamped to `[0, 1]`.
///
/// # Panics
///
/// If `index` is out of range.
pub fn probability_from_trajectory<T: Real>(traj: &BlochTrajectory<T>, index: usize) -> T {
    let n3 = traj.samples()[index].z();
    ((T::one() - n3) * T::half()).max(T::zero()).min(T::one())
}

/// Times `(2k + 1) pi / alpha0`, `k = 0..=n_max`, at which the uniform model
/// with orthogonal axes transfers the spin completely.
pub fn resonance_times<T: Real>(model: &ResonanceModel<T>, n_max: usize) -> Result<Vec<T>> {
    let ResonanceModel::Uniform { alpha0, .. } = model else {
        return Err(SpinError::InvalidParameter("resonance times are defined for the uniform model".into()));
    };
    let lambda = model.lambda();
    if lambda.abs() > T::lit(CHI_EPS) {
        return Err(SpinError::NotMaximalResonance { lambda: lambda.as_f64() });
    }
    if *alpha0 == T::zero() {
        return Err(SpinError::InvalidParameter("alpha0 must be nonzero".into()));
    }
    Ok((0..=n_max).map(|k| T::from_usize(2 * k + 1).unwrap() * T::PI() / alpha0.abs()).collect())
}
