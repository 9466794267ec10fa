//! Normalized two-component spin states.

use num_complex::Complex;

use crate::error::{Result, SpinError};
use crate::scalar::Real;
use crate::vector::{BlochVector, Vec3};

/// Pure spin-1/2 state `up |+> + down |->`, normalized to one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor<T> {
    up: Complex<T>,
    down: Complex<T>,
}

impl<T: Real> Spinor<T> {
    pub fn new(up: Complex<T>, down: Complex<T>) -> Result<Self> {
        let norm = (up.norm_sqr() + down.norm_sqr()).sqrt();
        if !norm.is_finite() || (norm - T::one()).abs() > T::lit(T::NORM_TOL) {
            return Err(SpinError::NotNormalized { norm: norm.as_f64() });
        }
        Ok(Self { up, down })
    }

    /// Rescales a nonzero pair of amplitudes to unit norm.
    pub fn normalized(up: Complex<T>, down: Complex<T>) -> Result<Self> {
        let norm = (up.norm_sqr() + down.norm_sqr()).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(SpinError::NotNormalized { norm: norm.as_f64() });
        }
        Ok(Self { up: up / norm, down: down / norm })
    }

    /// `|+>`, the state whose Bloch vector is `+z`.
    pub fn plus() -> Self {
        Self { up: Complex::new(T::one(), T::zero()), down: Complex::new(T::zero(), T::zero()) }
    }

    /// `|->`, the state whose Bloch vector is `-z`.
    pub fn minus() -> Self {
        Self { up: Complex::new(T::zero(), T::zero()), down: Complex::new(T::one(), T::zero()) }
    }

    /// `cos(theta/2) |+> + e^{i phi} sin(theta/2) |->`.
    pub fn from_angles(theta: T, phi: T) -> Self {
        let (s, c) = (theta * T::half()).sin_cos();
        Self { up: Complex::new(c, T::zero()), down: Complex::from_polar(s, phi) }
    }

    /// A spinor projecting onto `n`, with the phase convention of
    /// [`Spinor::from_angles`].
    pub fn from_bloch(n: BlochVector<T>) -> Self {
        let phi = n.y().atan2(n.x());
        Self::from_angles(n.colatitude(), phi)
    }

    #[inline]
    pub fn up(&self) -> Complex<T> {
        self.up
    }

    #[inline]
    pub fn down(&self) -> Complex<T> {
        self.down
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    pub fn norm(&self) -> T {
        (self.up.norm_sqr() + self.down.norm_sqr()).sqrt()
    }

    /// Multiplies by the global phase `e^{i phi}`.
    pub fn with_phase(&self, phi: T) -> Self {
        let z = Complex::from_polar(T::one(), phi);
        Self { up: self.up * z, down: self.down * z }
    }

    /// Bloch vector `<psi| sigma |psi>`.
    pub fn bloch(&self) -> BlochVector<T> {
        bloch_from_spinor(self)
    }

    pub(crate) fn amplitudes(&self) -> [Complex<T>; 2] {
        [self.up, self.down]
    }

    pub(crate) fn from_amplitudes_unchecked(a: [Complex<T>; 2]) -> Self {
        Self { up: a[0], down: a[1] }
    }
}

/// Projects a spinor onto the sphere: `n = <psi| sigma |psi>`.
///
/// The result does not depend on the global phase of `psi`.
pub fn bloch_from_spinor<T: Real>(psi: &Spinor<T>) -> BlochVector<T> {
    let cross = psi.up.conj() * psi.down;
    let v = Vec3::new(T::two() * cross.re, T::two() * cross.im, psi.up.norm_sqr() - psi.down.norm_sqr());
    // |v| = |psi|^2 exactly; divide out the rounding residue
    BlochVector::project(v).expect("normalized spinor has a nonzero Bloch vector")
}
