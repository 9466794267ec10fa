use crate::quadrature::adaptive_simpson;
use crate::scalar::Real;

/// Fresnel cosine integral `C(u) = int_0^u cos(pi s^2 / 2) ds`.
///
/// Adaptive Simpson quadrature to absolute tolerance `1e-9`, on panels
/// narrow enough that each covers at most about half an oscillation.
pub fn fresnel_integral_c<T: Real>(u: T) -> T {
    if u == T::zero() {
        return T::zero();
    }
    let a = u.abs();
    let panels = (a * a * T::half()).ceil().to_usize().unwrap_or(1) + 1;
    let half_pi = T::FRAC_PI_2();
    let c = adaptive_simpson(|s: T| (half_pi * s * s).cos(), T::zero(), a, T::lit(1e-9), panels);
    c * u.signum()
}
