use crate::error::{Result, SpinError};
use crate::field::{FieldProgram, TimeGrid};
use crate::loops::solid_angle_quadrature;
use crate::propagate::{bloch_path, integrate_propagator, integrate_spinor};
use crate::quadrature::trapezoid;
use crate::scalar::{wrap_phase, Real};
use crate::spinor::Spinor;

/// Split of the cyclic phase of a state into energy and geometric parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseDecomposition<T> {
    /// `arg <psi(0)|psi(tau)>`, in `(-pi, pi]`.
    pub total: T,
    /// `-int <psi|H|psi> dt = (1/2) int b . n dt`.
    pub dynamical: T,
    /// `total - dynamical`, mapped to `(-pi, pi]`.
    pub geometric: T,
    /// Oriented solid angle of the Bloch trajectory, by quadrature.
    pub solid_angle: T,
    /// Deviation of `U(tau)` from a scalar.
    pub deviation: T,
}

impl<T: Real> PhaseDecomposition<T> {
    /// `geometric + solid_angle / 2` mapped to `(-pi, pi]`; zero for an exact
    /// decomposition.
    pub fn residual(&self) -> T {
        wrap_phase(self.geometric + self.solid_angle * T::half())
    }
}

/// Decomposes the phase acquired by `psi0` over one loop period.
///
/// Fails with [`SpinError::NotCyclic`] unless `U(tau)` lies within
/// `tol_loop` of a multiple of the identity.
pub fn phase_decomposition<T: Real>(
    field: &FieldProgram<T>,
    psi0: Spinor<T>,
    tau: T,
    steps: usize,
    tol_loop: T,
) -> Result<PhaseDecomposition<T>> {
    let grid = TimeGrid::new(tau, steps)?;
    let (deviation, _) = integrate_propagator(field, &grid)?.last().distance_to_scalar();
    if !(deviation < tol_loop) {
        return Err(SpinError::NotCyclic { tau: tau.as_f64(), deviation: deviation.as_f64() });
    }
    let path = integrate_spinor(field, psi0, &grid)?;
    let total = psi0.inner(path.last().unwrap()).arg();
    let traj = bloch_path(&grid, &path)?;
    let energy: Vec<T> =
        grid.times().zip(traj.samples()).map(|(t, n)| field.eval(t).dot(n.vector())).collect();
    let dynamical = trapezoid(&energy, grid.dt()) * T::half();
    let solid_angle = solid_angle_quadrature(&traj)?;
    Ok(PhaseDecomposition {
        total,
        dynamical,
        geometric: wrap_phase(total - dynamical),
        solid_angle,
        deviation,
    })
}
