//! Oriented solid angle enclosed by a closed curve on the Bloch sphere.
//!
//! The quadrature route integrates `(n1 n2' - n2 n1')/(1 + n3)`, the
//! connection of a frame that is regular everywhere except at the south
//! pole. The closed forms specialize it to two-axis loops starting at
//! `n(0) = (sin theta, 0, cos theta)`.

use crate::error::{Result, SpinError};
use crate::loops::{check_loop_condition, LoopSpec, WINDING_TOL};
use crate::program::{AngleProgram, RotationProgram};
use crate::propagate::BlochTrajectory;
use crate::quadrature::{adaptive_simpson, grid_derivative, trapezoid};
use crate::scalar::Real;
use crate::vector::Vec3;

/// Maximum `|n(tau) - n(0)|` for a trajectory to count as closed.
pub const CLOSURE_TOL: f64 = 1e-4;

/// Minimum admissible `1 + n3` along a trajectory.
pub const POLE_EPS: f64 = 1e-6;

/// Solid angle by trapezoidal quadrature with central-difference rates.
pub fn solid_angle_quadrature<T: Real>(traj: &BlochTrajectory<T>) -> Result<T> {
    let grid = traj.grid();
    let points: Vec<Vec3<T>> = traj.samples().iter().map(|n| n.vector()).collect();
    let gap = (traj.last().vector() - traj.first().vector()).norm();
    if !(gap < T::lit(CLOSURE_TOL)) {
        return Err(SpinError::OpenTrajectory { gap: gap.as_f64() });
    }
    if let Some((i, n)) = points.iter().enumerate().find(|(_, n)| !(T::one() + n.z > T::lit(POLE_EPS))) {
        return Err(SpinError::SouthPoleSingularity {
            t: grid.time(i).as_f64(),
            gap: (T::one() + n.z).as_f64(),
        });
    }
    let rates = grid_derivative(&points, grid.dt());
    let integrand: Vec<T> =
        points.iter().zip(&rates).map(|(n, dn)| (n.x * dn.y - n.y * dn.x) / (T::one() + n.z)).collect();
    Ok(trapezoid(&integrand, grid.dt()))
}

fn require_loop<T: Real>(prog: &RotationProgram<T>, spec: &LoopSpec<T>) -> Result<()> {
    match check_loop_condition(prog, spec.tau, T::lit(WINDING_TOL)) {
        Some(found) if found.l == spec.l && found.n == spec.n => Ok(()),
        _ => Err(SpinError::LoopConditionViolated {
            alpha_turns: (prog.alpha().eval(spec.tau) / T::TAU()).as_f64(),
            beta_turns: (prog.beta().eval(spec.tau) / T::TAU()).as_f64(),
        }),
    }
}

/// `2 n pi [1 - cos chi cos(theta - chi)] - 2 l pi [1 - cos(theta - chi)]`.
fn winding_terms<T: Real>(chi: T, theta: T, spec: &LoopSpec<T>) -> T {
    let c = (theta - chi).cos();
    let n = T::from_i64(spec.n).unwrap();
    let l = T::from_i64(spec.l).unwrap();
    T::TAU() * (n * (T::one() - chi.cos() * c) - l * (T::one() - c))
}

fn quadrature_panels<T: Real>(tau: T) -> usize {
    (tau.abs().ceil().to_usize().unwrap_or(1) * 64).max(64)
}

/// Closed-form solid angle of a two-axis loop started at
/// `(sin theta, 0, cos theta)`: winding terms plus
/// `sin chi sin(theta - chi) int_0^tau beta' cos(alpha) dt`, the last
/// integral evaluated by adaptive quadrature.
pub fn solid_angle_closed_form<T: Real>(
    prog: &RotationProgram<T>,
    spec: &LoopSpec<T>,
    theta: T,
) -> Result<T> {
    require_loop(prog, spec)?;
    let chi = prog.chi();
    let residual = adaptive_simpson(
        |t| prog.beta().derivative(t) * prog.alpha().eval(t).cos(),
        T::zero(),
        spec.tau,
        T::lit(1e-11),
        quadrature_panels(spec.tau),
    );
    Ok(winding_terms(chi, theta, spec) + chi.sin() * (theta - chi).sin() * residual)
}

/// Closed-form solid angle for the constant-`b3` family, where the residual
/// integral reduces to `-b0 sin chi sin(theta - chi) int_0^tau cos(alpha) dt`.
pub fn solid_angle_constant_b3<T: Real>(
    b0: T,
    chi: T,
    theta: T,
    alpha: &AngleProgram<T>,
    spec: &LoopSpec<T>,
) -> Result<T> {
    let lambda = chi.cos();
    if !(lambda.abs() > T::lit(crate::synthesize::CHI_EPS)) {
        return Err(SpinError::ChiDegenerate { chi: chi.as_f64() });
    }
    let beta = alpha.scaled(lambda).plus(&AngleProgram::linear(-b0));
    let prog = RotationProgram::new(chi, alpha.clone(), beta)?;
    require_loop(&prog, spec)?;
    let cos_integral = adaptive_simpson(
        |t| alpha.eval(t).cos(),
        T::zero(),
        spec.tau,
        T::lit(1e-11),
        quadrature_panels(spec.tau),
    );
    Ok(winding_terms(chi, theta, spec) - b0 * chi.sin() * (theta - chi).sin() * cos_integral)
}
