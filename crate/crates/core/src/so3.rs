//! Proper rotations of the Bloch sphere.

use std::ops::Mul;

use crate::error::{Result, SpinError};
use crate::scalar::Real;
use crate::vector::{BlochVector, Vec3};

/// 3x3 real orthogonal matrix with unit determinant, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SO3Matrix<T> {
    m: [[T; 3]; 3],
}

impl<T: Real> SO3Matrix<T> {
    pub fn new(m: [[T; 3]; 3]) -> Result<Self> {
        let r = Self { m };
        let defect = r.orthogonality_defect().max((r.det() - T::one()).abs());
        if !(defect <= T::lit(T::NORM_TOL)) {
            return Err(SpinError::NotInGroup { group: "SO(3)", defect: defect.as_f64() });
        }
        Ok(r)
    }

    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Self { m: [[o, z, z], [z, o, z], [z, z, o]] }
    }

    /// Active right-handed rotation by `angle` about `+y`.
    pub fn about_y(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        let (o, z) = (T::one(), T::zero());
        Self { m: [[c, z, s], [z, o, z], [-s, z, c]] }
    }

    /// Active right-handed rotation by `angle` about `+z`.
    pub fn about_z(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        let (o, z) = (T::one(), T::zero());
        Self { m: [[c, -s, z], [s, c, z], [z, z, o]] }
    }

    /// Active right-handed rotation by `angle` about the unit vector `axis`
    /// (Rodrigues formula).
    pub fn about_axis(axis: Vec3<T>, angle: T) -> Self {
        let k = axis / axis.norm();
        let (s, c) = angle.sin_cos();
        let v = T::one() - c;
        Self {
            m: [
                [c + k.x * k.x * v, k.x * k.y * v - k.z * s, k.x * k.z * v + k.y * s],
                [k.y * k.x * v + k.z * s, c + k.y * k.y * v, k.y * k.z * v - k.x * s],
                [k.z * k.x * v - k.y * s, k.z * k.y * v + k.x * s, c + k.z * k.z * v],
            ],
        }
    }

    pub fn entries(&self) -> [[T; 3]; 3] {
        self.m
    }

    pub fn transpose(&self) -> Self {
        let mut t = self.m;
        for (i, row) in t.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.m[j][i];
            }
        }
        Self { m: t }
    }

    pub fn det(&self) -> T {
        let m = &self.m;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// `max |R^T R - I|` over entries.
    pub fn orthogonality_defect(&self) -> T {
        let p = self.transpose() * *self;
        let id = Self::identity();
        let mut worst = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((p.m[i][j] - id.m[i][j]).abs());
            }
        }
        worst
    }

    pub fn apply(&self, v: Vec3<T>) -> Vec3<T> {
        let m = &self.m;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    /// Rotates a point on the sphere; the image is re-projected to absorb
    /// rounding.
    pub fn rotate(&self, n: BlochVector<T>) -> BlochVector<T> {
        BlochVector::project(self.apply(n.vector())).expect("rotation preserves the unit norm")
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).abs());
            }
        }
        worst
    }
}

impl<T: Real> Mul for SO3Matrix<T> {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let mut out = [[T::zero(); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..3).map(|k| self.m[i][k] * o.m[k][j]).sum();
            }
        }
        Self { m: out }
    }
}
