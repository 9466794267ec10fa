use thiserror::Error;

/// Errors raised by the spin toolkit.
///
/// Times and magnitudes are reported as `f64` regardless of the scalar type
/// the computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpinError {
    #[error("vector norm {norm} is not 1")]
    NotUnitVector { norm: f64 },

    #[error("spinor norm {norm} is not 1")]
    NotNormalized { norm: f64 },

    #[error("matrix is not in {group} (defect {defect})")]
    NotInGroup { group: &'static str, defect: f64 },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("invalid sampled field: {0}")]
    InvalidSamples(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("field is not finite at t = {t}")]
    NonFiniteField { t: f64 },

    #[error("trajectory crosses the equator (n3 = {n3}) at t = {t}")]
    EquatorSingularity { t: f64, n3: f64 },

    #[error("two-axis denominator vanishes ({value}) at t = {t}")]
    DenominatorSingularity { t: f64, value: f64 },

    #[error("rotation axes are orthogonal (chi = {chi}); cos(chi) = 0 is not allowed here")]
    ChiDegenerate { chi: f64 },

    #[error("lambda = {lambda} != 0: transition probability never reaches 1")]
    NotMaximalResonance { lambda: f64 },

    #[error("trajectory approaches the south pole (1 + n3 = {gap}) at t = {t}")]
    SouthPoleSingularity { t: f64, gap: f64 },

    #[error("trajectory is not closed (|n(tau) - n(0)| = {gap})")]
    OpenTrajectory { gap: f64 },

    #[error("loop condition violated: alpha(tau)/2pi = {alpha_turns}, beta(tau)/2pi = {beta_turns}")]
    LoopConditionViolated { alpha_turns: f64, beta_turns: f64 },

    #[error("evolution is not cyclic at tau = {tau} (deviation {deviation})")]
    NotCyclic { tau: f64, deviation: f64 },
}

impl SpinError {
    /// Short stable name of the variant, used as a machine-readable prefix.
    pub fn kind(&self) -> &'static str {
        match self {
            SpinError::NotUnitVector { .. } => "NotUnitVector",
            SpinError::NotNormalized { .. } => "NotNormalized",
            SpinError::NotInGroup { .. } => "NotInGroup",
            SpinError::InvalidGrid(_) => "InvalidGrid",
            SpinError::InvalidSamples(_) => "InvalidSamples",
            SpinError::InvalidParameter(_) => "InvalidParameter",
            SpinError::NonFiniteField { .. } => "NonFiniteField",
            SpinError::EquatorSingularity { .. } => "EquatorSingularity",
            SpinError::DenominatorSingularity { .. } => "DenominatorSingularity",
            SpinError::ChiDegenerate { .. } => "ChiDegenerate",
            SpinError::NotMaximalResonance { .. } => "NotMaximalResonance",
            SpinError::SouthPoleSingularity { .. } => "SouthPoleSingularity",
            SpinError::OpenTrajectory { .. } => "OpenTrajectory",
            SpinError::LoopConditionViolated { .. } => "LoopConditionViolated",
            SpinError::NotCyclic { .. } => "NotCyclic",
        }
    }

    /// Whether the error stems from a coordinate or parameter singularity.
    pub fn is_singularity(&self) -> bool {
        matches!(
            self,
            SpinError::EquatorSingularity { .. }
                | SpinError::DenominatorSingularity { .. }
                | SpinError::ChiDegenerate { .. }
                | SpinError::SouthPoleSingularity { .. }
        )
    }
}

pub type Result<T, E = SpinError> = std::result::Result<T, E>;
