//! Cartesian 3-vectors and unit vectors on the Bloch sphere.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use crate::error::{Result, SpinError};
use crate::scalar::Real;

/// Plain Cartesian 3-vector. Field components are angular frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Vec3<T> {
    #[inline]
    pub fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    #[inline]
    pub fn unit_x() -> Self {
        Self::new(T::one(), T::zero(), T::zero())
    }

    #[inline]
    pub fn unit_y() -> Self {
        Self::new(T::zero(), T::one(), T::zero())
    }

    #[inline]
    pub fn unit_z() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    #[inline]
    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    #[inline]
    pub fn norm_squared(self) -> T {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Largest absolute component difference.
    pub fn max_abs_diff(self, other: Self) -> T {
        let d = self - other;
        d.x.abs().max(d.y.abs()).max(d.z.abs())
    }
}

impl<T: Real> Add for Vec3<T> {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> AddAssign for Vec3<T> {
    #[inline]
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<T: Real> Sub for Vec3<T> {
    type Output = Self;
    #[inline]
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Neg for Vec3<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Real> Div<T> for Vec3<T> {
    type Output = Self;
    #[inline]
    fn div(self, s: T) -> Self {
        Self::new(self.x / s, self.y / s, self.z / s)
    }
}

/// A point on the unit sphere: the Bloch-vector image of a pure spin state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector<T>(Vec3<T>);

impl<T: Real> BlochVector<T> {
    /// Wraps `v`, rejecting it unless `|v| = 1` within [`Real::NORM_TOL`].
    pub fn new(v: Vec3<T>) -> Result<Self> {
        let norm = v.norm();
        if !v.is_finite() || (norm - T::one()).abs() > T::lit(T::NORM_TOL) {
            return Err(SpinError::NotUnitVector { norm: norm.as_f64() });
        }
        Ok(Self(v))
    }

    /// Radial projection of a nonzero vector onto the sphere.
    pub fn project(v: Vec3<T>) -> Result<Self> {
        let norm = v.norm();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(SpinError::NotUnitVector { norm: norm.as_f64() });
        }
        Ok(Self(v / norm))
    }

    /// `(sin theta cos phi, sin theta sin phi, cos theta)`.
    pub fn from_angles(theta: T, phi: T) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self(Vec3::new(st * cp, st * sp, ct))
    }

    pub fn north() -> Self {
        Self(Vec3::unit_z())
    }

    pub fn south() -> Self {
        Self(-Vec3::unit_z())
    }

    #[inline]
    pub fn vector(self) -> Vec3<T> {
        self.0
    }

    #[inline]
    pub fn x(self) -> T {
        self.0.x
    }

    #[inline]
    pub fn y(self) -> T {
        self.0.y
    }

    #[inline]
    pub fn z(self) -> T {
        self.0.z
    }

    /// Polar angle measured from `+z`.
    pub fn colatitude(self) -> T {
        self.0.z.max(-T::one()).min(T::one()).acos()
    }
}

impl<T> From<BlochVector<T>> for Vec3<T> {
    fn from(n: BlochVector<T>) -> Self {
        n.0
    }
}
