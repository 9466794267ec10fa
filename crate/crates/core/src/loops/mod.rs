//! Evolution loops: fields whose propagator returns to the identity (up to a
//! global phase) at some time `tau`, so that every state evolves cyclically.
//!
//! For a two-axis rotation program the loop condition reads
//! `alpha(tau) = 2 l pi`, `beta(tau) = 2 n pi`. Certification is done
//! numerically on the propagator, independently of any program.

mod fresnel;
mod phase;
mod solid_angle;

pub use fresnel::fresnel_integral_c;
pub use phase::{phase_decomposition, PhaseDecomposition};
pub use solid_angle::{
    solid_angle_closed_form, solid_angle_constant_b3, solid_angle_quadrature, CLOSURE_TOL, POLE_EPS,
};

use crate::error::Result;
use crate::field::{FieldProgram, TimeGrid};
use crate::program::RotationProgram;
use crate::propagate::integrate_propagator;
use crate::scalar::Real;

/// Tolerance on integer winding counts in [`check_loop_condition`].
pub const WINDING_TOL: f64 = 1e-9;

/// Numeric thresholds used when certifying loops and comparing phases.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopTolerances {
    /// Upper bound on the propagator deviation from a scalar.
    pub loop_deviation: f64,
    /// Bound on phase identities, modulo `2 pi`.
    pub phase: f64,
}

impl Default for LoopTolerances {
    fn default() -> Self {
        Self { loop_deviation: 1e-4, phase: 1e-3 }
    }
}

/// Closure time and winding numbers: `l` turns about `e_chi` and `n` turns
/// about `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopSpec<T> {
    pub tau: T,
    pub l: i64,
    pub n: i64,
}

/// Outcome of a numerical loop certification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopCertificate<T> {
    pub tau: T,
    /// `min_phi |U(tau) - e^{i phi} I|_F`.
    pub deviation: T,
    /// Minimizing phase, in `(-pi, pi]`.
    pub global_phase: T,
    /// Deviation of `U(2 tau)`.
    pub deviation_twice: T,
    /// Whether `U(2 tau)` also certifies.
    pub periodic: bool,
    pub tolerance: T,
}

impl<T: Real> LoopCertificate<T> {
    pub fn is_valid(&self) -> bool {
        self.deviation < self.tolerance
    }
}

/// Returns the winding numbers when `alpha(tau)` and `beta(tau)` are both
/// within `tol` turns of integer multiples of `2 pi`.
pub fn check_loop_condition<T: Real>(prog: &RotationProgram<T>, tau: T, tol: T) -> Option<LoopSpec<T>> {
    if !(tau > T::zero()) {
        return None;
    }
    let turns = |x: T| {
        let t = x / T::TAU();
        let k = t.round();
        ((t - k).abs() <= tol).then(|| k.to_i64()).flatten()
    };
    let l = turns(prog.alpha().eval(tau))?;
    let n = turns(prog.beta().eval(tau))?;
    Some(LoopSpec { tau, l, n })
}

/// Integrates the propagator to `2 tau` and measures how far `U(tau)` and
/// `U(2 tau)` are from multiples of the identity.
pub fn certify_loop<T: Real>(
    field: &FieldProgram<T>,
    tau: T,
    steps: usize,
    tol_loop: T,
) -> Result<LoopCertificate<T>> {
    let grid = TimeGrid::new(tau * T::two(), 2 * steps)?;
    let us = integrate_propagator(field, &grid)?;
    let (deviation, global_phase) = us.samples()[steps].distance_to_scalar();
    let (deviation_twice, _) = us.last().distance_to_scalar();
    Ok(LoopCertificate {
        tau,
        deviation,
        global_phase,
        deviation_twice,
        periodic: deviation_twice < tol_loop,
        tolerance: tol_loop,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::program::AngleProgram;
    use crate::vector::Vec3;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn linear_programs_close() {
        let prog = RotationProgram::new(0.5, AngleProgram::linear(5.0), AngleProgram::linear(1.0)).unwrap();
        let spec = check_loop_condition(&prog, TAU, 1e-9).unwrap();
        assert_eq!((spec.l, spec.n), (5, 1));
    }

    #[test]
    fn half_turn_is_not_a_loop() {
        let prog = RotationProgram::new(0.5, AngleProgram::linear(1.0), AngleProgram::zero()).unwrap();
        assert!(check_loop_condition(&prog, PI, 1e-9).is_none());
        assert!(check_loop_condition(&prog, 0.0, 1e-9).is_none());
    }

    #[test]
    fn constant_field_loop_has_phase_pi() {
        let b0 = 2.0;
        let field = crate::field::FieldProgram::constant(Vec3::new(0.0, 0.0, b0));
        let cert = certify_loop(&field, TAU / b0, 20_000, 1e-4).unwrap();
        assert!(cert.deviation < 1e-6);
        assert!((cert.global_phase.abs() - PI).abs() < 1e-6);
        assert!(cert.is_valid() && cert.periodic);
    }

    #[test]
    fn detuned_constant_field_fails() {
        let field = crate::field::FieldProgram::constant(Vec3::new(0.0, 0.0, 1.9));
        let cert = certify_loop(&field, PI, 5000, 1e-4).unwrap();
        assert!(!cert.is_valid());
    }
}
