//! Forward integration of the Bloch equation `dn/dt = -b x n` and of the
//! spinor equation `d psi/dt = (i/2)(b . sigma) psi`.
//!
//! All integrators are classical fixed-step fourth-order Runge-Kutta. After
//! every step the state is projected back onto its manifold (the unit sphere
//! for Bloch vectors, the unit sphere of `C^2` for spinors, the unitary group
//! for propagators). Sampled fields are sub-stepped so that no step is wider
//! than the sample spacing.

use std::ops::{Add, Mul};

use num_complex::Complex;

use crate::error::{Result, SpinError};
use crate::field::{FieldProgram, TimeGrid};
use crate::scalar::Real;
use crate::spinor::Spinor;
use crate::su2::{spinor_generator, Mat2, SU2Matrix};
use crate::vector::{BlochVector, Vec3};

/// Default number of integrator steps per run.
pub const DEFAULT_STEPS: usize = 20_000;

/// Bloch vectors sampled on every node of a [`TimeGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct BlochTrajectory<T> {
    grid: TimeGrid<T>,
    samples: Vec<BlochVector<T>>,
}

impl<T: Real> BlochTrajectory<T> {
    pub fn new(grid: TimeGrid<T>, samples: Vec<BlochVector<T>>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(SpinError::InvalidGrid(format!(
                "{} samples for {} grid nodes",
                samples.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, samples })
    }

    /// Samples a closed-form trajectory on the grid.
    pub fn from_fn(grid: TimeGrid<T>, f: impl Fn(T) -> BlochVector<T>) -> Self {
        let samples = grid.times().map(f).collect();
        Self { grid, samples }
    }

    pub fn grid(&self) -> &TimeGrid<T> {
        &self.grid
    }

    pub fn samples(&self) -> &[BlochVector<T>] {
        &self.samples
    }

    pub fn first(&self) -> BlochVector<T> {
        self.samples[0]
    }

    pub fn last(&self) -> BlochVector<T> {
        *self.samples.last().unwrap()
    }

    /// Same curve traversed backwards on the same grid.
    pub fn reversed(&self) -> Self {
        let mut samples = self.samples.clone();
        samples.reverse();
        Self { grid: self.grid, samples }
    }

    /// Largest componentwise distance to another trajectory on the same grid.
    pub fn max_deviation(&self, other: &Self) -> T {
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| a.vector().max_abs_diff(b.vector()))
            .fold(T::zero(), |a, b| a.max(b))
    }
}

/// Propagators `U(t_i)` with `U(0) = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagatorTrajectory<T> {
    grid: TimeGrid<T>,
    samples: Vec<SU2Matrix<T>>,
}

impl<T: Real> PropagatorTrajectory<T> {
    pub fn grid(&self) -> &TimeGrid<T> {
        &self.grid
    }

    pub fn samples(&self) -> &[SU2Matrix<T>] {
        &self.samples
    }

    /// `U(tau)`.
    pub fn last(&self) -> SU2Matrix<T> {
        *self.samples.last().unwrap()
    }
}

#[derive(Clone, Copy)]
struct Amplitudes<T>([Complex<T>; 2]);

impl<T: Real> Add for Amplitudes<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self([self.0[0] + o.0[0], self.0[1] + o.0[1]])
    }
}

impl<T: Real> Mul<T> for Amplitudes<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self([self.0[0] * s, self.0[1] * s])
    }
}

fn rk4<T, S, F>(y: S, t: T, h: T, f: &F) -> Result<S>
where
    T: Real,
    S: Copy + Add<Output = S> + Mul<T, Output = S>,
    F: Fn(T, S) -> Result<S>,
{
    let half = h * T::half();
    let k1 = f(t, y)?;
    let k2 = f(t + half, y + k1 * half)?;
    let k3 = f(t + half, y + k2 * half)?;
    let k4 = f(t + h, y + k3 * h)?;
    let sixth = h / T::lit(6.0);
    Ok(y + (k1 + k2 * T::two() + k3 * T::two() + k4) * sixth)
}

/// One unprojected RK4 step of the Bloch equation.
pub fn bloch_step<T: Real>(field: &FieldProgram<T>, n: Vec3<T>, t: T, h: T) -> Result<Vec3<T>> {
    rk4(n, t, h, &|s, v: Vec3<T>| Ok(v.cross(field.eval_checked(s)?)))
}

/// One unprojected RK4 step of the spinor equation, returning raw amplitudes.
pub fn spinor_step<T: Real>(
    field: &FieldProgram<T>,
    psi: [Complex<T>; 2],
    t: T,
    h: T,
) -> Result<[Complex<T>; 2]> {
    let out = rk4(Amplitudes(psi), t, h, &|s, a: Amplitudes<T>| {
        Ok(Amplitudes(spinor_generator(field.eval_checked(s)?).apply(a.0)))
    })?;
    Ok(out.0)
}

fn propagator_step<T: Real>(field: &FieldProgram<T>, u: Mat2<T>, t: T, h: T) -> Result<Mat2<T>> {
    rk4(u, t, h, &|s, m: Mat2<T>| Ok(spinor_generator(field.eval_checked(s)?) * m))
}

/// Number of equal sub-steps per grid interval so that sampled fields are
/// never stepped over.
fn substeps<T: Real>(field: &FieldProgram<T>, grid: &TimeGrid<T>) -> Result<usize> {
    match field {
        FieldProgram::Symbolic(_) => Ok(1),
        FieldProgram::Sampled(s) => {
            let slack = grid.dt() * T::lit(1e-9);
            if s.start() > slack || s.end() < grid.tau() - slack {
                return Err(SpinError::InvalidSamples(format!(
                    "samples span [{}, {}] but integration runs over [0, {}]",
                    s.start().as_f64(),
                    s.end().as_f64(),
                    grid.tau().as_f64()
                )));
            }
            let ratio = grid.dt() / s.min_spacing();
            let n = (ratio * (T::one() - T::lit(1e-9))).ceil().max(T::one());
            Ok(n.to_usize().unwrap_or(1))
        }
    }
}

/// Drives `step` across every grid interval, sub-stepping as required, and
/// collects the projected state at each node.
fn march<T, S, P>(
    field: &FieldProgram<T>,
    grid: &TimeGrid<T>,
    y0: S,
    step: impl Fn(S, T, T) -> Result<S>,
    project: impl Fn(S) -> Result<S>,
    mut record: impl FnMut(S) -> P,
) -> Result<Vec<P>>
where
    T: Real,
    S: Copy,
{
    let sub = substeps(field, grid)?;
    let mut out = Vec::with_capacity(grid.len());
    let mut y = y0;
    out.push(record(y));
    for i in 0..grid.steps() {
        let (t0, t1) = (grid.time(i), grid.time(i + 1));
        let h = (t1 - t0) / T::from_usize(sub).unwrap();
        for k in 0..sub {
            let t = t0 + h * T::from_usize(k).unwrap();
            y = project(step(y, t, h)?)?;
        }
        out.push(record(y));
    }
    Ok(out)
}

/// Integrates `dn/dt = -b(t) x n` from `n0` over `grid`.
pub fn integrate_bloch<T: Real>(
    field: &FieldProgram<T>,
    n0: BlochVector<T>,
    grid: &TimeGrid<T>,
) -> Result<BlochTrajectory<T>> {
    let samples = march(
        field,
        grid,
        n0,
        |n: BlochVector<T>, t, h| {
            let v = bloch_step(field, n.vector(), t, h)?;
            BlochVector::project(v).map_err(|_| SpinError::NonFiniteField { t: t.as_f64() })
        },
        Ok,
        |n| n,
    )?;
    Ok(BlochTrajectory { grid: *grid, samples })
}

/// Integrates `dU/dt = (i/2)(b . sigma) U` from `U(0) = I`, projecting each
/// step back onto the unitary group.
pub fn integrate_propagator<T: Real>(
    field: &FieldProgram<T>,
    grid: &TimeGrid<T>,
) -> Result<PropagatorTrajectory<T>> {
    let samples = march(
        field,
        grid,
        SU2Matrix::identity(),
        |u: SU2Matrix<T>, t, h| {
            let raw = propagator_step(field, *u.matrix(), t, h)?;
            SU2Matrix::polar_project(&raw).map_err(|_| SpinError::NonFiniteField { t: t.as_f64() })
        },
        Ok,
        |u| u,
    )?;
    Ok(PropagatorTrajectory { grid: *grid, samples })
}

/// Integrates the spinor equation from `psi0`, renormalizing after each step.
pub fn integrate_spinor<T: Real>(
    field: &FieldProgram<T>,
    psi0: Spinor<T>,
    grid: &TimeGrid<T>,
) -> Result<Vec<Spinor<T>>> {
    march(
        field,
        grid,
        psi0,
        |psi: Spinor<T>, t, h| {
            let [a, b] = spinor_step(field, [psi.up(), psi.down()], t, h)?;
            Spinor::normalized(a, b).map_err(|_| SpinError::NonFiniteField { t: t.as_f64() })
        },
        Ok,
        |psi| psi,
    )
}

/// Bloch trajectory of a spinor path.
pub fn bloch_path<T: Real>(grid: &TimeGrid<T>, path: &[Spinor<T>]) -> Result<BlochTrajectory<T>> {
    BlochTrajectory::new(*grid, path.iter().map(Spinor::bloch).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, TAU};

    #[test]
    fn zero_field_keeps_state() {
        let grid = TimeGrid::new(3.0, 100).unwrap();
        let n0 = BlochVector::from_angles(0.7, 1.2);
        let traj = integrate_bloch(&FieldProgram::zero(), n0, &grid).unwrap();
        assert!(traj.samples().iter().all(|n| n.vector() == n0.vector()));
        let u = integrate_propagator(&FieldProgram::<f64>::zero(), &grid).unwrap();
        assert!(u.last().matrix().distance(&Mat2::identity()) < 1e-15);
        let psi = integrate_spinor(&FieldProgram::zero(), Spinor::plus(), &grid).unwrap();
        assert!(psi.iter().all(|p| *p == Spinor::plus()));
    }

    #[test]
    fn precession_about_z() {
        let omega = 2.0;
        let theta0 = FRAC_PI_3;
        let field = FieldProgram::constant(Vec3::new(0.0, 0.0, -omega));
        let grid = TimeGrid::new(TAU, DEFAULT_STEPS).unwrap();
        let n0 = BlochVector::from_angles(theta0, 0.0);
        let traj = integrate_bloch(&field, n0, &grid).unwrap();
        let exact = BlochTrajectory::from_fn(grid, |t| BlochVector::from_angles(theta0, omega * t));
        assert!(traj.max_deviation(&exact) < 1e-6);
        assert_eq!(traj.first(), n0);
    }

    #[test]
    fn nonfinite_field_is_reported() {
        let field = FieldProgram::symbolic("pole", |t: f64| Vec3::new(0.0, 0.0, 1.0 / (t - 0.5)));
        let grid = TimeGrid::new(1.0, 10).unwrap();
        let err = integrate_bloch(&field, BlochVector::north(), &grid).unwrap_err();
        assert!(matches!(err, SpinError::NonFiniteField { t } if (t - 0.5).abs() < 1e-12));
        assert!(integrate_propagator(&field, &grid).is_err());
    }

    #[test]
    fn sampled_field_must_cover_grid() {
        let field = FieldProgram::sampled(vec![0.0, 0.5], vec![Vec3::zero(); 2]).unwrap();
        let grid = TimeGrid::new(1.0, 10).unwrap();
        assert!(matches!(
            integrate_bloch(&field, BlochVector::north(), &grid),
            Err(SpinError::InvalidSamples(_))
        ));
    }

    #[test]
    fn coarse_grid_substeps_sampled_field() {
        let times: Vec<f64> = (0..=1000).map(|i| i as f64 * 1e-3).collect();
        let values = times.iter().map(|_| Vec3::new(0.0, 0.0, -3.0)).collect();
        let field = FieldProgram::sampled(times, values).unwrap();
        let grid = TimeGrid::new(1.0, 10).unwrap();
        assert_eq!(substeps(&field, &grid).unwrap(), 100);
        let n0 = BlochVector::from_angles(1.0, 0.0);
        let traj = integrate_bloch(&field, n0, &grid).unwrap();
        let exact = BlochVector::from_angles(1.0, 3.0);
        assert!(traj.last().vector().max_abs_diff(exact.vector()) < 1e-10);
    }

    #[test]
    fn single_precision_precession() {
        let field = FieldProgram::constant(Vec3::new(0.0_f32, 0.0, -1.0));
        let grid = TimeGrid::new(std::f32::consts::PI, 2000).unwrap();
        let traj = integrate_bloch(&field, BlochVector::from_angles(0.5_f32, 0.0), &grid).unwrap();
        let exact = BlochVector::from_angles(0.5_f32, std::f32::consts::PI);
        assert!(traj.last().vector().max_abs_diff(exact.vector()) < 1e-4);
    }
}
