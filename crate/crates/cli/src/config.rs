//! Run configuration files.
//!
//! A configuration is a JSON document. Angle programs are term arrays such
//! as `[{"sin": {"amp": 0.56, "freq": 5}}, {"lin": 1.0}]`, and sampled
//! fields are CSV files with columns `t,b1,b2,b3` (extra columns ignored),
//! resolved relative to the configuration file.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use spinforge_core::{AngleProgram, GaugeProgram, LoopTolerances, Term};

use crate::error::CliError;

const BUNDLED: &[(&str, &str)] = &[
    ("fig1a", include_str!("../configs/fig1a.json")),
    ("fig1b", include_str!("../configs/fig1b.json")),
    ("fresnel-loop", include_str!("../configs/fresnel-loop.json")),
    ("rabi", include_str!("../configs/rabi.json")),
];

/// Names of the configurations compiled into the binary.
pub fn bundled_names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(name, _)| *name)
}

/// Source text of a bundled configuration.
pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Simulate,
    Synthesize,
    Resonance,
    LoopCheck,
    Phase,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermSpec {
    Lin(f64),
    Quad(f64),
    Sin { amp: f64, freq: f64 },
}

impl From<&TermSpec> for Term<f64> {
    fn from(spec: &TermSpec) -> Self {
        match *spec {
            TermSpec::Lin(c) => Term::Linear(c),
            TermSpec::Quad(c) => Term::Quadratic(c),
            TermSpec::Sin { amp, freq } => Term::Sinusoid { amp, freq },
        }
    }
}

impl From<&Term<f64>> for TermSpec {
    fn from(term: &Term<f64>) -> Self {
        match *term {
            Term::Linear(c) => TermSpec::Lin(c),
            Term::Quadratic(c) => TermSpec::Quad(c),
            Term::Sinusoid { amp, freq } => TermSpec::Sin { amp, freq },
        }
    }
}

pub fn program_from_terms(terms: &[TermSpec]) -> Result<AngleProgram, CliError> {
    AngleProgram::new(terms.iter().map(Term::from).collect())
        .map_err(|e| CliError::config(format!("angle program: {e}")))
}

pub fn terms_from_program(program: &AngleProgram) -> Vec<TermSpec> {
    program.terms().iter().map(TermSpec::from).collect()
}

/// Tilt of the inner rotation axis, as an angle or as its cosine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Chi(f64),
    Lambda(f64),
}

impl Axis {
    pub fn chi(self) -> Result<f64, CliError> {
        match self {
            Axis::Chi(chi) => Ok(chi),
            Axis::Lambda(l) if (-1.0..=1.0).contains(&l) => Ok(l.acos()),
            Axis::Lambda(l) => Err(CliError::config(format!("lambda = {l} outside [-1, 1]"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GaugeSpec {
    /// `b3 = lambda alpha' - beta'`, the state-independent choice.
    Invariant,
    Constant(f64),
    /// `b3 = scale * d/dt terms`.
    Rate {
        terms: Vec<TermSpec>,
        #[serde(default = "one")]
        scale: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl GaugeSpec {
    pub fn build(&self) -> Result<Option<GaugeProgram>, CliError> {
        Ok(match self {
            GaugeSpec::Invariant => None,
            GaugeSpec::Constant(c) => Some(GaugeProgram::Constant(*c)),
            GaugeSpec::Rate { terms, scale } => {
                Some(GaugeProgram::Rate { program: program_from_terms(terms)?, scale: *scale })
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    /// Fixed field vector.
    Constant { b: [f64; 3] },
    /// Uniform rotations `alpha = alpha0 t`, `beta = beta0 t` under the
    /// invariant gauge.
    Uniform {
        alpha0: f64,
        beta0: f64,
        #[serde(flatten)]
        axis: Axis,
    },
    /// Two-axis program under the invariant gauge.
    Rotation {
        #[serde(flatten)]
        axis: Axis,
        alpha: Vec<TermSpec>,
        beta: Vec<TermSpec>,
    },
    /// Constant third component `b0`, from either `beta` or `alpha`.
    ConstantB3 {
        b0: f64,
        #[serde(flatten)]
        axis: Axis,
        #[serde(default)]
        alpha: Option<Vec<TermSpec>>,
        #[serde(default)]
        beta: Option<Vec<TermSpec>>,
    },
    /// Precession about `z` by `delta(t)` from the initial state.
    SingleAxis { delta: Vec<TermSpec>, gauge: GaugeSpec },
    /// Two-axis program from the initial state under an arbitrary gauge.
    General {
        #[serde(flatten)]
        axis: Axis,
        alpha: Vec<TermSpec>,
        beta: Vec<TermSpec>,
        gauge: GaugeSpec,
    },
    /// Field samples read from a CSV file.
    Sampled { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialState {
    pub theta: f64,
    #[serde(default)]
    pub phi: f64,
}

impl Default for InitialState {
    fn default() -> Self {
        Self { theta: 0.0, phi: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub tau: f64,
    #[serde(default)]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceSpec {
    #[serde(default)]
    pub loop_deviation: Option<f64>,
    #[serde(default)]
    pub phase: Option<f64>,
}

impl ToleranceSpec {
    pub fn resolve(&self) -> LoopTolerances {
        let d = LoopTolerances::default();
        LoopTolerances {
            loop_deviation: self.loop_deviation.unwrap_or(d.loop_deviation),
            phase: self.phase.unwrap_or(d.phase),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub mode: Option<Mode>,
    pub field: FieldSpec,
    #[serde(default)]
    pub initial: InitialState,
    pub grid: GridSpec,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub tolerances: ToleranceSpec,
    /// Directory against which relative input paths resolve.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl RunConfig {
    pub fn parse(text: &str, base_dir: impl Into<PathBuf>) -> Result<Self, CliError> {
        let mut config: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::config(e.to_string()))?;
        config.base_dir = base_dir.into();
        config.validate()?;
        Ok(config)
    }

    /// Reads a configuration file, or a bundled configuration by name when
    /// no such file exists.
    pub fn load(source: &str) -> Result<Self, CliError> {
        let path = Path::new(source);
        if path.is_file() {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(format!("{source}: {e}")))?;
            let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
            return Self::parse(&text, dir);
        }
        match bundled(source) {
            Some(text) => Self::parse(text, PathBuf::new()),
            None => Err(CliError::config(format!(
                "no config file or bundled config named '{source}' (bundled: {})",
                bundled_names().collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.grid.tau.is_finite() && self.grid.tau > 0.0) {
            return Err(CliError::config(format!("grid.tau = {} must be positive", self.grid.tau)));
        }
        if matches!(self.grid.steps, Some(s) if s < 2) {
            return Err(CliError::config("grid.steps must be at least 2"));
        }
        if !(self.initial.theta.is_finite() && self.initial.phi.is_finite()) {
            return Err(CliError::config("initial angles must be finite"));
        }
        if let FieldSpec::ConstantB3 { alpha, beta, .. } = &self.field {
            if alpha.is_some() == beta.is_some() {
                return Err(CliError::config("constant_b3 needs exactly one of 'alpha' or 'beta'"));
            }
        }
        Ok(())
    }

    /// Sampled-field paths resolved against the configuration directory.
    pub fn resolve_path(&self, path: &Path) -> PathBuf {
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }
}
