//! Driving fields `b(t) = mu B(t)`, gauge choices and time grids.

use std::fmt;
use std::sync::Arc;

use crate::error::{Result, SpinError};
use crate::program::AngleProgram;
use crate::scalar::Real;
use crate::vector::Vec3;

/// Uniform grid `t_i = tau * i / steps`, `i = 0..=steps`, starting at zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid<T> {
    tau: T,
    steps: usize,
}

impl<T: Real> TimeGrid<T> {
    pub fn new(tau: T, steps: usize) -> Result<Self> {
        if !(tau > T::zero()) || !tau.is_finite() {
            return Err(SpinError::InvalidGrid(format!("tau = {} must be positive", tau.as_f64())));
        }
        if steps < 2 {
            return Err(SpinError::InvalidGrid(format!("steps = {steps} must be at least 2")));
        }
        Ok(Self { tau, steps })
    }

    #[inline]
    pub fn tau(&self) -> T {
        self.tau
    }

    #[inline]
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Number of nodes, `steps + 1`.
    #[inline]
    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn dt(&self) -> T {
        self.tau / T::from_usize(self.steps).unwrap()
    }

    #[inline]
    pub fn time(&self, i: usize) -> T {
        self.tau * T::from_usize(i).unwrap() / T::from_usize(self.steps).unwrap()
    }

    pub fn times(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.len()).map(move |i| self.time(i))
    }
}

type FieldFn<T> = Arc<dyn Fn(T) -> Vec3<T> + Send + Sync>;
type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Closed-form field `t -> b(t)`.
#[derive(Clone)]
pub struct SymbolicField<T> {
    label: String,
    f: FieldFn<T>,
}

impl<T> SymbolicField<T> {
    pub fn label(&self) -> &str {
        &self.label
    }
}

impl<T> fmt::Debug for SymbolicField<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymbolicField").field("label", &self.label).finish_non_exhaustive()
    }
}

/// Field known at strictly increasing sample times, linearly interpolated.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField<T> {
    times: Vec<T>,
    values: Vec<Vec3<T>>,
}

impl<T: Real> SampledField<T> {
    pub fn new(times: Vec<T>, values: Vec<Vec3<T>>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(SpinError::InvalidSamples(format!(
                "{} times but {} values",
                times.len(),
                values.len()
            )));
        }
        if times.len() < 2 {
            return Err(SpinError::InvalidSamples("need at least two samples".into()));
        }
        if let Some(i) = times.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(SpinError::InvalidSamples(format!(
                "sample times not strictly increasing at index {}",
                i + 1
            )));
        }
        if let Some(i) = times.iter().position(|t| !t.is_finite()) {
            return Err(SpinError::InvalidSamples(format!("non-finite time at index {i}")));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(SpinError::InvalidSamples(format!("non-finite field at index {i}")));
        }
        Ok(Self { times, values })
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn values(&self) -> &[Vec3<T>] {
        &self.values
    }

    pub fn start(&self) -> T {
        self.times[0]
    }

    pub fn end(&self) -> T {
        *self.times.last().unwrap()
    }

    pub fn min_spacing(&self) -> T {
        self.times.windows(2).map(|w| w[1] - w[0]).fold(T::infinity(), |a, b| a.min(b))
    }

    /// Linear interpolation; constant extrapolation outside the sampled span.
    pub fn eval(&self, t: T) -> Vec3<T> {
        let n = self.times.len();
        if t <= self.times[0] {
            return self.values[0];
        }
        if t >= self.times[n - 1] {
            return self.values[n - 1];
        }
        // first index with times[idx] > t; 1 <= idx <= n - 1
        let idx = self.times.partition_point(|&s| s <= t);
        let (t0, t1) = (self.times[idx - 1], self.times[idx]);
        let w = (t - t0) / (t1 - t0);
        self.values[idx - 1] * (T::one() - w) + self.values[idx] * w
    }
}

/// Homogeneous driving field in angular-frequency units.
#[derive(Debug, Clone)]
pub enum FieldProgram<T> {
    Symbolic(SymbolicField<T>),
    Sampled(SampledField<T>),
}

impl<T: Real> FieldProgram<T> {
    /// Wraps a closed-form field.
    pub fn symbolic<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(T) -> Vec3<T> + Send + Sync + 'static,
    {
        FieldProgram::Symbolic(SymbolicField { label: label.into(), f: Arc::new(f) })
    }

    pub fn constant(b: Vec3<T>) -> Self {
        Self::symbolic("constant", move |_| b)
    }

    pub fn zero() -> Self {
        Self::constant(Vec3::zero())
    }

    pub fn sampled(times: Vec<T>, values: Vec<Vec3<T>>) -> Result<Self> {
        SampledField::new(times, values).map(FieldProgram::Sampled)
    }

    #[inline]
    pub fn eval(&self, t: T) -> Vec3<T> {
        match self {
            FieldProgram::Symbolic(s) => (s.f)(t),
            FieldProgram::Sampled(s) => s.eval(t),
        }
    }

    /// Evaluates and rejects non-finite values.
    #[inline]
    pub fn eval_checked(&self, t: T) -> Result<Vec3<T>> {
        let b = self.eval(t);
        if b.is_finite() {
            Ok(b)
        } else {
            Err(SpinError::NonFiniteField { t: t.as_f64() })
        }
    }

    pub fn label(&self) -> &str {
        match self {
            FieldProgram::Symbolic(s) => s.label(),
            FieldProgram::Sampled(_) => "sampled",
        }
    }
}

/// The free third field component left undetermined by a trajectory.
#[derive(Clone)]
pub enum GaugeProgram<T> {
    /// `b3(t) = c`
    Constant(T),
    /// `b3(t) = scale * d/dt program(t)`
    Rate { program: AngleProgram<T>, scale: T },
    /// Any scalar function of time.
    Function(ScalarFn<T>),
}

impl<T: Real> GaugeProgram<T> {
    pub fn function<F>(f: F) -> Self
    where
        F: Fn(T) -> T + Send + Sync + 'static,
    {
        GaugeProgram::Function(Arc::new(f))
    }

    /// `b3 = -d(delta)/dt`, the choice that makes a single-axis field
    /// independent of the initial state.
    pub fn negative_rate(delta: &AngleProgram<T>) -> Self {
        GaugeProgram::Rate { program: delta.clone(), scale: -T::one() }
    }

    #[inline]
    pub fn eval(&self, t: T) -> T {
        match self {
            GaugeProgram::Constant(c) => *c,
            GaugeProgram::Rate { program, scale } => *scale * program.derivative(t),
            GaugeProgram::Function(f) => f(t),
        }
    }

    /// Whether this gauge is syntactically `-d(delta)/dt`.
    pub fn is_negative_rate_of(&self, delta: &AngleProgram<T>) -> bool {
        matches!(self, GaugeProgram::Rate { program, scale }
            if *scale == -T::one() && program == delta)
    }
}

impl<T: Real> fmt::Debug for GaugeProgram<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GaugeProgram::Constant(c) => f.debug_tuple("Constant").field(c).finish(),
            GaugeProgram::Rate { program, scale } => {
                f.debug_struct("Rate").field("program", program).field("scale", scale).finish()
            }
            GaugeProgram::Function(_) => f.write_str("Function(..)"),
        }
    }
}
