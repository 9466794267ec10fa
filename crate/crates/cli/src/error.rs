use std::fmt;

use spinforge_core::SpinError;

/// Failure of a command-line run, carrying its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unparseable or inconsistent configuration; exit code 1.
    Config(String),
    /// Error reported by the numerical core.
    Spin(SpinError),
    /// A loop or cyclicity check that did not pass; exit code 3.
    Certification(String),
    /// Reading inputs or writing outputs failed; exit code 4.
    Io(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn io(msg: impl Into<String>) -> Self {
        CliError::Io(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Spin(e) if e.is_singularity() => 2,
            CliError::Spin(SpinError::NotCyclic { .. } | SpinError::OpenTrajectory { .. }) => 3,
            CliError::Spin(_) => 1,
            CliError::Certification(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    /// Machine-readable tag printed as `error[<kind>]`.
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "Config",
            CliError::Spin(e) => e.kind(),
            CliError::Certification(_) => "Certification",
            CliError::Io(_) => "Io",
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            CliError::Spin(e) => e.to_string(),
            CliError::Config(m) | CliError::Certification(m) | CliError::Io(m) => m.clone(),
        };
        // single line, whatever the source message looks like
        write!(f, "error[{}]: {}", self.kind(), msg.replace('\n', " "))
    }
}

impl std::error::Error for CliError {}

impl From<SpinError> for CliError {
    fn from(e: SpinError) -> Self {
        CliError::Spin(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::config("x").exit_code(), 1);
        assert_eq!(CliError::from(SpinError::ChiDegenerate { chi: 1.5 }).exit_code(), 2);
        assert_eq!(CliError::from(SpinError::EquatorSingularity { t: 0.5, n3: 0.0 }).exit_code(), 2);
        assert_eq!(CliError::from(SpinError::NotCyclic { tau: 1.0, deviation: 0.3 }).exit_code(), 3);
        assert_eq!(CliError::from(SpinError::InvalidGrid("g".into())).exit_code(), 1);
        assert_eq!(CliError::Certification("c".into()).exit_code(), 3);
        assert_eq!(CliError::io("disk").exit_code(), 4);
    }

    #[test]
    fn message_is_one_prefixed_line() {
        let e = CliError::from(SpinError::DenominatorSingularity { t: 0.25, value: 0.0 });
        let line = e.to_string();
        assert!(line.starts_with("error[DenominatorSingularity]: "));
        assert!(line.contains("t = 0.25"));
        assert!(!CliError::config("a\nb").to_string().contains('\n'));
    }
}
