//! Pauli algebra and the special-unitary propagators acting on spinors.

use std::ops::{Add, Mul};

use num_complex::Complex;

use crate::error::{Result, SpinError};
use crate::scalar::Real;
use crate::so3::SO3Matrix;
use crate::spinor::Spinor;
use crate::vector::Vec3;

/// Raw 2x2 complex matrix, row-major. Used for intermediate integrator
/// stages where unitarity does not hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2<T>(pub [[Complex<T>; 2]; 2]);

impl<T: Real> Mat2<T> {
    pub fn identity() -> Self {
        let (o, z) = (Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::zero()));
        Self([[o, z], [z, o]])
    }

    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self([[z, z], [z, z]])
    }

    pub fn dagger(&self) -> Self {
        let m = &self.0;
        Self([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn det(&self) -> Complex<T> {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> Complex<T> {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let m = &self.0;
        Self([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn apply(&self, v: [Complex<T>; 2]) -> [Complex<T>; 2] {
        let m = &self.0;
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// Frobenius norm of `self - other`.
    pub fn distance(&self, other: &Self) -> T {
        let mut acc = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                acc = acc + (self.0[i][j] - other.0[i][j]).norm_sqr();
            }
        }
        acc.sqrt()
    }
}

impl<T: Real> Add for Mat2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (a, b) = (&self.0, &o.0);
        Self([[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]])
    }
}

impl<T: Real> Mul for Mat2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (&self.0, &o.0);
        Self([
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ])
    }
}

impl<T: Real> Mul<T> for Mat2<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }
}

/// Pauli matrices `[sigma_x, sigma_y, sigma_z]`.
pub fn pauli<T: Real>() -> [Mat2<T>; 3] {
    let o = Complex::new(T::one(), T::zero());
    let z = Complex::new(T::zero(), T::zero());
    let i = Complex::new(T::zero(), T::one());
    [Mat2([[z, o], [o, z]]), Mat2([[z, -i], [i, z]]), Mat2([[o, z], [z, -o]])]
}

/// `b . sigma`.
pub fn field_dot_sigma<T: Real>(b: Vec3<T>) -> Mat2<T> {
    let re = |x: T| Complex::new(x, T::zero());
    Mat2([[re(b.z), Complex::new(b.x, -b.y)], [Complex::new(b.x, b.y), re(-b.z)]])
}

/// Generator of the spinor flow, `-i H = (i/2) b . sigma` for
/// `H = -(1/2) b . sigma`.
pub fn spinor_generator<T: Real>(b: Vec3<T>) -> Mat2<T> {
    field_dot_sigma(b).scale(Complex::new(T::zero(), T::half()))
}

/// A 2x2 special-unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2Matrix<T>(Mat2<T>);

impl<T: Real> SU2Matrix<T> {
    /// Validates unitarity and `|det| = 1`.
    pub fn new(entries: [[Complex<T>; 2]; 2]) -> Result<Self> {
        let m = Mat2(entries);
        let defect = unitarity_defect(&m).max((m.det().norm() - T::one()).abs());
        if !(defect <= T::lit(T::NORM_TOL)) {
            return Err(SpinError::NotInGroup { group: "SU(2)", defect: defect.as_f64() });
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Mat2::identity())
    }

    /// Propagator `exp(-i angle axis.sigma / 2)`, which rotates Bloch vectors
    /// by `+angle` about `axis`.
    pub fn from_axis_angle(axis: Vec3<T>, angle: T) -> Self {
        let k = axis / axis.norm();
        let (s, c) = (angle * T::half()).sin_cos();
        let cross = field_dot_sigma(k).scale(Complex::new(T::zero(), -s));
        Self(Mat2::identity().scale(Complex::new(c, T::zero())) + cross)
    }

    /// Nearest unitary matrix in the polar sense, `M (M^dagger M)^{-1/2}`.
    pub fn polar_project(m: &Mat2<T>) -> Result<Self> {
        // For positive 2x2 A: sqrt(A) = (A + sqrt(det A) I) / sqrt(tr A + 2 sqrt(det A)).
        let a = m.dagger() * *m;
        let det = a.det().re.max(T::zero()).sqrt();
        let tr = a.trace().re;
        let denom = (tr + T::two() * det).sqrt();
        let root = (a + Mat2::identity() * det) * (T::one() / denom);
        let rdet = root.det();
        if !(rdet.norm() > T::zero()) || !rdet.re.is_finite() {
            return Err(SpinError::NotInGroup { group: "GL(2)", defect: f64::INFINITY });
        }
        let r = &root.0;
        let inv = Mat2([[r[1][1], -r[0][1]], [-r[1][0], r[0][0]]]).scale(rdet.inv());
        Ok(Self(*m * inv))
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.0
    }

    pub fn entries(&self) -> [[Complex<T>; 2]; 2] {
        self.0 .0
    }

    pub fn dagger(&self) -> Self {
        Self(self.0.dagger())
    }

    pub fn det(&self) -> Complex<T> {
        self.0.det()
    }

    pub fn apply(&self, psi: &Spinor<T>) -> Spinor<T> {
        Spinor::from_amplitudes_unchecked(self.0.apply(psi.amplitudes()))
    }

    /// Adjoint image: the rotation `R` with `n(U psi) = R n(psi)`.
    pub fn to_so3(&self) -> SO3Matrix<T> {
        let s = pauli::<T>();
        let ud = self.0.dagger();
        let mut r = [[T::zero(); 3]; 3];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (s[i] * self.0 * s[j] * ud).trace().re * T::half();
            }
        }
        SO3Matrix::new(r).expect("adjoint of a unitary is a rotation")
    }

    /// Distance to the ray of the identity: `min_phi |U - e^{i phi} I|_F`
    /// together with the minimizing phase.
    ///
    /// For diagonal entries `u, v` the minimum over unit `z` of
    /// `|u - z|^2 + |v - z|^2` is `|u|^2 + |v|^2 + 2 - 2|u + v|`, attained at
    /// `z = (u + v)/|u + v|`.
    pub fn distance_to_scalar(&self) -> (T, T) {
        let m = &self.0 .0;
        let off = m[0][1].norm_sqr() + m[1][0].norm_sqr();
        let sum = m[0][0] + m[1][1];
        let diag = m[0][0].norm_sqr() + m[1][1].norm_sqr() + T::two() - T::two() * sum.norm();
        let dev = (off + diag.max(T::zero())).sqrt();
        (dev, sum.arg())
    }
}

impl<T: Real> Mul for SU2Matrix<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self(self.0 * o.0)
    }
}

/// `max |U^dagger U - I|` over entries.
pub fn unitarity_defect<T: Real>(m: &Mat2<T>) -> T {
    let p = m.dagger() * *m;
    let id = Mat2::<T>::identity();
    let mut worst = T::zero();
    for i in 0..2 {
        for j in 0..2 {
            worst = worst.max((p.0[i][j] - id.0[i][j]).norm());
        }
    }
    worst
}
