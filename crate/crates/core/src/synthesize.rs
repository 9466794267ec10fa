//! Inverse techniques: fields that induce a prescribed evolution.
//!
//! A trajectory `n(t)` fixes only two field components. The Bloch equation
//! `dn/dt = -b x n` is singular in `b` (its matrix has zero determinant), so
//! the third component `b3(t)` is a free gauge. The two-axis constructions
//! expose the special gauge `b3 + beta' = lambda alpha'`, for which the field
//! depends only on the rotation program and not on the initial state.

use crate::error::{Result, SpinError};
use crate::field::{FieldProgram, GaugeProgram, TimeGrid};
use crate::program::{AngleProgram, RotationProgram};
use crate::propagate::BlochTrajectory;
use crate::quadrature::grid_derivative;
use crate::scalar::Real;
use crate::vector::{BlochVector, Vec3};

/// Threshold below which `n3` (or the two-axis denominator) counts as zero.
pub const PLANE_EPS: f64 = 1e-9;

/// Threshold below which `|cos chi|` counts as zero.
pub const CHI_EPS: f64 = 1e-12;

/// Field reconstructed from a sampled trajectory and a gauge:
///
/// `b1 = (b3 n1 + n2') / n3`, `b2 = (b3 n2 - n1') / n3`, `b3 = gauge`.
///
/// Derivatives come from central differences on the trajectory grid. The
/// result is sampled on the same grid.
pub fn pointwise_inverse<T: Real>(
    traj: &BlochTrajectory<T>,
    gauge: &GaugeProgram<T>,
) -> Result<FieldProgram<T>> {
    let grid = traj.grid();
    let eps = T::lit(PLANE_EPS);
    let points: Vec<Vec3<T>> = traj.samples().iter().map(|n| n.vector()).collect();
    if let Some((i, n)) = points.iter().enumerate().find(|(_, n)| !(n.z.abs() > eps)) {
        return Err(SpinError::EquatorSingularity { t: grid.time(i).as_f64(), n3: n.z.as_f64() });
    }
    let rates = grid_derivative(&points, grid.dt());
    let times: Vec<T> = grid.times().collect();
    let values = times
        .iter()
        .zip(points.iter().zip(&rates))
        .map(|(&t, (n, dn))| {
            let b3 = gauge.eval(t);
            Vec3::new((b3 * n.x + dn.y) / n.z, (b3 * n.y - dn.x) / n.z, b3)
        })
        .collect();
    FieldProgram::sampled(times, values)
}

/// Fields inducing precession about `z` by `delta(t)` from the initial
/// colatitude `theta0` and azimuth `phi0`:
///
/// `b = tan(theta0) (b3 + delta') [cos(phi0 + delta), sin(phi0 + delta), 0] + b3 k`.
///
/// With the gauge `b3 = -delta'` the result is `-delta'(t) k` for every
/// initial state, and no restriction on `theta0` applies.
pub fn single_axis_field<T: Real>(
    theta0: T,
    phi0: T,
    delta: &AngleProgram<T>,
    gauge: &GaugeProgram<T>,
) -> Result<FieldProgram<T>> {
    if gauge.is_negative_rate_of(delta) {
        let delta = delta.clone();
        return Ok(FieldProgram::symbolic("single-axis invariant", move |t| {
            Vec3::new(T::zero(), T::zero(), -delta.derivative(t))
        }));
    }
    let cos0 = theta0.cos();
    if !(cos0.abs() > T::lit(PLANE_EPS)) {
        return Err(SpinError::EquatorSingularity { t: 0.0, n3: cos0.as_f64() });
    }
    let tan0 = theta0.tan();
    let delta = delta.clone();
    let gauge = gauge.clone();
    Ok(FieldProgram::symbolic("single-axis", move |t| {
        let b3 = gauge.eval(t);
        let amp = tan0 * (b3 + delta.derivative(t));
        let (s, c) = (phi0 + delta.eval(t)).sin_cos();
        Vec3::new(amp * c, amp * s, b3)
    }))
}

/// Gauge `b3 = lambda alpha' - beta'` that removes the dependence on the
/// initial state.
pub fn invariant_gauge<T: Real>(prog: &RotationProgram<T>) -> GaugeProgram<T> {
    let combined = prog.alpha().scaled(prog.lambda()).plus(&prog.beta().scaled(-T::one()));
    GaugeProgram::Rate { program: combined, scale: T::one() }
}

/// Initial-state projections entering the general two-axis field.
#[derive(Debug, Clone, Copy)]
struct NVector<T> {
    n1: T,
    n2: T,
    n3: T,
}

fn n_vector<T: Real>(lambda: T, transverse: T, alpha: T, n0: Vec3<T>) -> NVector<T> {
    let (sa, ca) = alpha.sin_cos();
    NVector {
        n1: -lambda * sa * n0.x + ca * n0.y + transverse * sa * n0.z,
        n2: lambda * ca * n0.x + sa * n0.y - transverse * ca * n0.z,
        n3: transverse * n0.x + lambda * n0.z,
    }
}

fn general_denominator<T: Real>(transverse: T, lambda: T, nv: &NVector<T>) -> T {
    -transverse * nv.n2 + lambda * nv.n3
}

/// Field driving `n(t) = R(t) n0` for a two-axis program under an arbitrary
/// gauge `b3(t)`.
///
/// The common denominator `-sqrt(1 - lambda^2) N2(t) + lambda N3` is checked
/// on every node of `grid`; a value at or below [`PLANE_EPS`] in magnitude is
/// reported as [`SpinError::DenominatorSingularity`].
pub fn two_axis_field_general<T: Real>(
    prog: &RotationProgram<T>,
    n0: BlochVector<T>,
    gauge: &GaugeProgram<T>,
    grid: &TimeGrid<T>,
) -> Result<FieldProgram<T>> {
    let lambda = prog.lambda();
    let transverse = prog.transverse();
    let v0 = n0.vector();
    for t in grid.times() {
        let nv = n_vector(lambda, transverse, prog.alpha().eval(t), v0);
        let d = general_denominator(transverse, lambda, &nv);
        if !(d.abs() > T::lit(PLANE_EPS)) {
            return Err(SpinError::DenominatorSingularity { t: t.as_f64(), value: d.as_f64() });
        }
    }
    let prog = prog.clone();
    let gauge = gauge.clone();
    Ok(FieldProgram::symbolic("two-axis general", move |t| {
        let (alpha, dalpha) = (prog.alpha().eval(t), prog.alpha().derivative(t));
        let (beta, dbeta) = (prog.beta().eval(t), prog.beta().derivative(t));
        let b3 = gauge.eval(t);
        let nv = n_vector(lambda, transverse, alpha, v0);
        let d = general_denominator(transverse, lambda, &nv);
        let g = b3 + dbeta;
        let p = (lambda * dalpha - g) * nv.n1;
        let q = g * (lambda * nv.n2 + transverse * nv.n3) - dalpha * nv.n2;
        let (sb, cb) = beta.sin_cos();
        Vec3::new((sb * p + cb * q) / d, (-cb * p + sb * q) / d, b3)
    }))
}

/// Field inducing the rotation program for every initial state:
///
/// `b = alpha' sqrt(1 - lambda^2) [cos beta, sin beta, 0] + (lambda alpha' - beta') k`.
pub fn two_axis_field_invariant<T: Real>(prog: &RotationProgram<T>) -> FieldProgram<T> {
    let prog = prog.clone();
    FieldProgram::symbolic("two-axis invariant", move |t| {
        let dalpha = prog.alpha().derivative(t);
        let dbeta = prog.beta().derivative(t);
        let (sb, cb) = prog.beta().eval(t).sin_cos();
        let amp = dalpha * prog.transverse();
        Vec3::new(amp * cb, amp * sb, prog.lambda() * dalpha - dbeta)
    })
}

/// Field with constant third component `b0` inducing the program
/// `(chi, alpha, beta)` with `alpha = (b0 t + beta) / lambda`.
///
/// Returns the field
/// `(sqrt(1 - lambda^2)/lambda) (b0 + beta') [cos beta, sin beta, 0] + b0 k`
/// and the induced `alpha`. The transverse part rotates with `beta'` and has
/// amplitude `|b0 + beta'| sqrt(1/lambda^2 - 1)`.
pub fn constant_b3_field<T: Real>(
    b0: T,
    beta: &AngleProgram<T>,
    chi: T,
) -> Result<(FieldProgram<T>, AngleProgram<T>)> {
    let lambda = chi.cos();
    if !(lambda.abs() > T::lit(CHI_EPS)) {
        return Err(SpinError::ChiDegenerate { chi: chi.as_f64() });
    }
    let alpha = AngleProgram::linear(b0).plus(beta).scaled(T::one() / lambda);
    let ratio = chi.sin() / lambda;
    let beta = beta.clone();
    let field = FieldProgram::symbolic("constant-b3", move |t| {
        let amp = ratio * (b0 + beta.derivative(t));
        let (s, c) = beta.eval(t).sin_cos();
        Vec3::new(amp * c, amp * s, b0)
    });
    Ok((field, alpha))
}

/// Constant-`b3` family parametrized by `alpha` instead of `beta`, using
/// `beta = lambda alpha - b0 t`. Unlike [`constant_b3_field`] this stays
/// regular at `lambda = 0`, where it reduces to
/// `b = alpha' [cos beta, sin beta, 0] + b0 k` with `beta = -b0 t`.
pub fn constant_b3_field_from_alpha<T: Real>(
    b0: T,
    alpha: &AngleProgram<T>,
    chi: T,
) -> Result<(FieldProgram<T>, AngleProgram<T>)> {
    let beta = alpha.scaled(chi.cos()).plus(&AngleProgram::linear(-b0));
    let prog = RotationProgram::new(chi, alpha.clone(), beta.clone())?;
    Ok((two_axis_field_invariant(&prog), beta))
}
