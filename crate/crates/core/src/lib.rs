//! Spin-1/2 evolution in homogeneous, time-dependent magnetic fields.
//!
//! Fields are expressed as `b(t) = mu B(t)` in angular-frequency units with
//! `hbar = 1`. The spin Hamiltonian is `H = -(1/2) b . sigma`, so Bloch
//! vectors obey `dn/dt = -b x n`.
//!
//! Every numeric routine is generic over a [`Real`] scalar (`f32` or `f64`);
//! the aliases at the crate root fix the scalar to `f64`.

// NaN-rejecting guards are written as negated comparisons on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod field;
pub mod loops;
pub mod program;
pub mod propagate;
pub mod quadrature;
pub mod resonance;
pub mod scalar;
pub mod so3;
pub mod spinor;
pub mod su2;
pub mod synthesize;
pub mod vector;

pub use error::{Result, SpinError};
pub use loops::{
    certify_loop, check_loop_condition, fresnel_integral_c, phase_decomposition, solid_angle_closed_form,
    solid_angle_constant_b3, solid_angle_quadrature, LoopTolerances, WINDING_TOL,
};
pub use program::{eval_derivative, eval_program, rotation_matrix, Term};
pub use propagate::{integrate_bloch, integrate_propagator, integrate_spinor, DEFAULT_STEPS};
pub use resonance::{probability_from_trajectory, resonance_times, transition_probability};
pub use scalar::{wrap_phase, Real};
pub use spinor::bloch_from_spinor;
pub use synthesize::{
    constant_b3_field, constant_b3_field_from_alpha, invariant_gauge, pointwise_inverse, single_axis_field,
    two_axis_field_general, two_axis_field_invariant,
};

pub type Vec3 = vector::Vec3<f64>;
pub type BlochVector = vector::BlochVector<f64>;
pub type Spinor = spinor::Spinor<f64>;
pub type SU2Matrix = su2::SU2Matrix<f64>;
pub type SO3Matrix = so3::SO3Matrix<f64>;
pub type AngleProgram = program::AngleProgram<f64>;
pub type RotationProgram = program::RotationProgram<f64>;
pub type FieldProgram = field::FieldProgram<f64>;
pub type GaugeProgram = field::GaugeProgram<f64>;
pub type TimeGrid = field::TimeGrid<f64>;
pub type BlochTrajectory = propagate::BlochTrajectory<f64>;
pub type PropagatorTrajectory = propagate::PropagatorTrajectory<f64>;
pub type LoopSpec = loops::LoopSpec<f64>;
pub type LoopCertificate = loops::LoopCertificate<f64>;
pub type PhaseDecomposition = loops::PhaseDecomposition<f64>;
pub type ResonanceModel = resonance::ResonanceModel<f64>;
