//! Finite differences and quadrature on uniform grids.

use crate::scalar::Real;
use crate::vector::Vec3;

/// Derivative of uniformly sampled vectors: central differences inside,
/// second-order one-sided differences at both ends.
pub fn grid_derivative<T: Real>(values: &[Vec3<T>], h: T) -> Vec<Vec3<T>> {
    let n = values.len();
    assert!(n >= 3, "need at least three samples for a second-order derivative");
    let two_h = T::two() * h;
    let three = T::lit(3.0);
    let four = T::lit(4.0);
    let mut out = Vec::with_capacity(n);
    out.push((values[0] * -three + values[1] * four - values[2]) / two_h);
    for w in values.windows(3) {
        out.push((w[2] - w[0]) / two_h);
    }
    out.push((values[n - 1] * three - values[n - 2] * four + values[n - 3]) / two_h);
    out
}

/// Composite trapezoidal rule for uniformly spaced samples.
pub fn trapezoid<T: Real>(values: &[T], h: T) -> T {
    match values.len() {
        0 | 1 => T::zero(),
        n => {
            let inner: T = values[1..n - 1].iter().copied().sum();
            h * (inner + (values[0] + values[n - 1]) * T::half())
        }
    }
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance
/// `tol`, after splitting the interval into `panels` equal panels.
pub fn adaptive_simpson<T: Real>(f: impl Fn(T) -> T, a: T, b: T, tol: T, panels: usize) -> T {
    let panels = panels.max(1);
    let width = (b - a) / T::from_usize(panels).unwrap();
    let panel_tol = tol / T::from_usize(panels).unwrap();
    (0..panels)
        .map(|k| {
            let lo = a + width * T::from_usize(k).unwrap();
            let hi = if k + 1 == panels { b } else { lo + width };
            let (flo, fhi) = (f(lo), f(hi));
            let mid = (lo + hi) * T::half();
            let fmid = f(mid);
            let whole = simpson(lo, hi, flo, fmid, fhi);
            refine(&f, lo, hi, flo, fmid, fhi, whole, panel_tol, 48)
        })
        .sum()
}

#[inline]
fn simpson<T: Real>(a: T, b: T, fa: T, fm: T, fb: T) -> T {
    (b - a) / T::lit(6.0) * (fa + T::lit(4.0) * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Real>(f: &impl Fn(T) -> T, a: T, b: T, fa: T, fm: T, fb: T, whole: T, tol: T, depth: u32) -> T {
    let m = (a + b) * T::half();
    let lm = (a + m) * T::half();
    let rm = (m + b) * T::half();
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::lit(15.0) * tol {
        return left + right + delta / T::lit(15.0);
    }
    refine(f, a, m, fa, flm, fm, left, tol * T::half(), depth - 1)
        + refine(f, m, b, fm, frm, fb, right, tol * T::half(), depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_exact_for_quadratics() {
        let h = 0.1;
        let values: Vec<Vec3<f64>> = (0..6)
            .map(|i| {
                let t = i as f64 * h;
                Vec3::new(t * t, 3.0 * t, 1.0)
            })
            .collect();
        let d = grid_derivative(&values, h);
        for (i, v) in d.iter().enumerate() {
            let t = i as f64 * h;
            assert!(v.max_abs_diff(Vec3::new(2.0 * t, 3.0, 0.0)) < 1e-12);
        }
    }

    #[test]
    fn trapezoid_linear_exact() {
        let v: Vec<f64> = (0..11).map(|i| i as f64 * 0.1).collect();
        assert!((trapezoid(&v, 0.1) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn simpson_integrates_sine() {
        let v = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-12, 4);
        assert!((v - 2.0).abs() < 1e-11);
    }
}
