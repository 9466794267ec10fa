//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
pub trait Real: Float + FloatConst + FromPrimitive + Sum + Debug + Display + Send + Sync + 'static {
    /// Tolerance used when validating unit norms, unitarity and orthogonality
    /// at construction time.
    const NORM_TOL: f64;

    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// Lossy conversion used for error reporting.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Real for f64 {
    const NORM_TOL: f64 = 1e-9;
}

impl Real for f32 {
    const NORM_TOL: f64 = 1e-5;
}

/// Maps an angle onto `(-pi, pi]`.
pub fn wrap_phase<T: Real>(phi: T) -> T {
    let two_pi = T::TAU();
    let mut r = phi % two_pi;
    if r <= -T::PI() {
        r = r + two_pi;
    } else if r > T::PI() {
        r = r - two_pi;
    }
    r
}

/// Distance between two angles on the circle, in `[0, pi]`.
pub fn phase_distance<T: Real>(a: T, b: T) -> T {
    wrap_phase(a - b).abs()
}
