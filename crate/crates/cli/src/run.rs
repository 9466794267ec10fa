//! Mode dispatch: builds fields from a configuration and runs one operation.

use std::path::PathBuf;

use serde::Serialize;
use serde_json::{json, Value};
use spinforge_core::resonance::{probability_from_trajectory, transition_probability, ResonanceModel};
use spinforge_core::{
    certify_loop, check_loop_condition, constant_b3_field, constant_b3_field_from_alpha, integrate_bloch,
    phase_decomposition, single_axis_field, solid_angle_closed_form, two_axis_field_general,
    two_axis_field_invariant, AngleProgram, BlochTrajectory, BlochVector, FieldProgram, RotationProgram,
    Spinor, TimeGrid, Vec3, DEFAULT_STEPS, WINDING_TOL,
};

use crate::config::{program_from_terms, terms_from_program, FieldSpec, Mode, RunConfig, TermSpec};
use crate::error::CliError;
use crate::output::{read_sampled_field, write_json, write_resonance_csv, write_trajectory_csv, Sink};

pub const STEPS_ENV: &str = "SPINFORGE_STEPS";

/// Command-line overrides applied on top of a configuration.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub steps: Option<usize>,
    pub tol: Option<f64>,
}

/// Step count by precedence: command line, configuration, environment,
/// built-in default.
pub fn resolve_steps(
    cli: Option<usize>,
    config: Option<usize>,
    env: Option<&str>,
) -> Result<usize, CliError> {
    let steps = match (cli, config, env) {
        (Some(s), _, _) | (None, Some(s), _) => s,
        (None, None, Some(text)) => text
            .trim()
            .parse()
            .map_err(|_| CliError::config(format!("{STEPS_ENV} = '{text}' is not a step count")))?,
        (None, None, None) => DEFAULT_STEPS,
    };
    if steps < 2 {
        return Err(CliError::config(format!("steps = {steps} must be at least 2")));
    }
    Ok(steps)
}

/// What a run produced besides its primary output.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub mode: Mode,
    pub sink: Sink,
    /// Short machine-readable summary of the run.
    pub summary: Value,
}

/// A field together with what is known about how it was built.
struct Built {
    field: FieldProgram,
    program: Option<RotationProgram>,
    /// Program whose `alpha` was derived from the configuration.
    induced: Option<(AngleProgram, AngleProgram)>,
    target: Option<Box<dyn Fn(f64) -> BlochVector>>,
}

fn initial_state(config: &RunConfig) -> BlochVector {
    BlochVector::from_angles(config.initial.theta, config.initial.phi)
}

fn rotation_target(prog: &RotationProgram, n0: BlochVector) -> Box<dyn Fn(f64) -> BlochVector> {
    let prog = prog.clone();
    Box::new(move |t| prog.trajectory_point(n0, t))
}

fn build(config: &RunConfig, grid: &TimeGrid) -> Result<Built, CliError> {
    let n0 = initial_state(config);
    let with_program = |field: FieldProgram, prog: RotationProgram, induced| Built {
        target: Some(rotation_target(&prog, n0)),
        field,
        program: Some(prog),
        induced,
    };
    Ok(match &config.field {
        FieldSpec::Constant { b } => Built {
            field: FieldProgram::constant(Vec3::from_array(*b)),
            program: None,
            induced: None,
            target: None,
        },
        FieldSpec::Uniform { alpha0, beta0, axis } => {
            let prog = RotationProgram::new(
                axis.chi()?,
                AngleProgram::linear(*alpha0),
                AngleProgram::linear(*beta0),
            )?;
            with_program(two_axis_field_invariant(&prog), prog, None)
        }
        FieldSpec::Rotation { axis, alpha, beta } => {
            let prog =
                RotationProgram::new(axis.chi()?, program_from_terms(alpha)?, program_from_terms(beta)?)?;
            with_program(two_axis_field_invariant(&prog), prog, None)
        }
        FieldSpec::ConstantB3 { b0, axis, alpha, beta } => {
            let chi = axis.chi()?;
            let (field, alpha, beta) = match (alpha, beta) {
                (None, Some(beta)) => {
                    let beta = program_from_terms(beta)?;
                    let (field, alpha) = constant_b3_field(*b0, &beta, chi)?;
                    (field, alpha, beta)
                }
                (Some(alpha), None) => {
                    let alpha = program_from_terms(alpha)?;
                    let (field, beta) = constant_b3_field_from_alpha(*b0, &alpha, chi)?;
                    (field, alpha, beta)
                }
                _ => return Err(CliError::config("constant_b3 needs exactly one of 'alpha' or 'beta'")),
            };
            let prog = RotationProgram::new(chi, alpha.clone(), beta.clone())?;
            with_program(field, prog, Some((alpha, beta)))
        }
        FieldSpec::SingleAxis { delta, gauge } => {
            let delta = program_from_terms(delta)?;
            let gauge = gauge.build()?.unwrap_or_else(|| spinforge_core::GaugeProgram::negative_rate(&delta));
            let (theta, phi) = (config.initial.theta, config.initial.phi);
            let field = single_axis_field(theta, phi, &delta, &gauge)?;
            Built {
                field,
                program: None,
                induced: None,
                target: Some(Box::new(move |t| BlochVector::from_angles(theta, phi + delta.eval(t)))),
            }
        }
        FieldSpec::General { axis, alpha, beta, gauge } => {
            let prog =
                RotationProgram::new(axis.chi()?, program_from_terms(alpha)?, program_from_terms(beta)?)?;
            let gauge = gauge.build()?.unwrap_or_else(|| spinforge_core::invariant_gauge(&prog));
            let field = two_axis_field_general(&prog, n0, &gauge, grid)?;
            with_program(field, prog, None)
        }
        FieldSpec::Sampled { path } => Built {
            field: read_sampled_field(&config.resolve_path(path))?,
            program: None,
            induced: None,
            target: None,
        },
    })
}

fn field_kind(spec: &FieldSpec) -> &'static str {
    match spec {
        FieldSpec::Constant { .. } => "constant",
        FieldSpec::Uniform { .. } => "uniform",
        FieldSpec::Rotation { .. } => "rotation",
        FieldSpec::ConstantB3 { .. } => "constant_b3",
        FieldSpec::SingleAxis { .. } => "single_axis",
        FieldSpec::General { .. } => "general",
        FieldSpec::Sampled { .. } => "sampled",
    }
}

#[derive(Serialize)]
struct InducedProgram {
    alpha: Vec<TermSpec>,
    beta: Vec<TermSpec>,
}

/// Loop certificate report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopReport {
    pub tau: f64,
    pub l: Option<i64>,
    pub n: Option<i64>,
    pub deviation: f64,
    pub global_phase: f64,
    pub deviation_2tau: f64,
    pub periodic: bool,
    pub tolerance: f64,
    pub certified: bool,
}

/// Phase decomposition report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseReport {
    pub tau: f64,
    pub total: f64,
    pub dynamical: f64,
    pub geometric: f64,
    pub solid_angle: f64,
    /// Closed-form solid angle, when the field comes from a closed two-axis
    /// program and the initial state lies in the `xz` half-plane `phi = 0`.
    pub solid_angle_closed_form: Option<f64>,
    pub residual: f64,
    pub deviation: f64,
    pub tolerance: f64,
}

/// Runs `mode` on `config`, writing the primary output to the resolved sink.
pub fn run(mode: Mode, config: &RunConfig, overrides: &Overrides) -> Result<Outcome, CliError> {
    let env = std::env::var(STEPS_ENV).ok();
    let steps = resolve_steps(overrides.steps, config.grid.steps, env.as_deref())?;
    let mut tolerances = config.tolerances.resolve();
    if let Some(tol) = overrides.tol {
        if tol.is_nan() || tol <= 0.0 {
            return Err(CliError::config(format!("--tol {tol} must be positive")));
        }
        tolerances.loop_deviation = tol;
    }
    let sink = match overrides.out.as_ref().or(config.out.as_ref()) {
        Some(path) => Sink::File(path.clone()),
        None => Sink::Stdout,
    };
    let grid = TimeGrid::new(config.grid.tau, steps)?;
    let built = build(config, &grid)?;
    let n0 = initial_state(config);
    let base = json!({ "mode": mode, "field": field_kind(&config.field), "steps": steps });

    let summary = match mode {
        Mode::Simulate => {
            let traj = integrate_bloch(&built.field, n0, &grid)?;
            sink.write_with(|w| write_trajectory_csv(w, &traj, &built.field))?;
            let last = traj.last();
            json!({ "base": base, "rows": grid.len(), "final": [last.x(), last.y(), last.z()] })
        }
        Mode::Synthesize => {
            let target = built.target.as_ref().ok_or_else(|| {
                CliError::config(format!(
                    "field kind '{}' prescribes no trajectory to synthesize",
                    field_kind(&config.field)
                ))
            })?;
            let traj = BlochTrajectory::from_fn(grid, target);
            for t in grid.times() {
                built.field.eval_checked(t)?;
            }
            sink.write_with(|w| write_trajectory_csv(w, &traj, &built.field))?;
            let induced = built.induced.as_ref().map(|(alpha, beta)| InducedProgram {
                alpha: terms_from_program(alpha),
                beta: terms_from_program(beta),
            });
            json!({ "base": base, "rows": grid.len(), "induced": induced })
        }
        Mode::Resonance => {
            let model = resonance_model(config)?;
            let field = model.field();
            let traj = integrate_bloch(&field, BlochVector::north(), &grid)?;
            let rows: Vec<[f64; 3]> = (0..grid.len())
                .map(|i| {
                    let t = grid.time(i);
                    [t, transition_probability(&model, t), probability_from_trajectory(&traj, i)]
                })
                .collect();
            sink.write_with(|w| write_resonance_csv(w, &rows))?;
            let gap = rows.iter().map(|r| (r[1] - r[2]).abs()).fold(0.0, f64::max);
            let max_p = rows.iter().map(|r| r[2]).fold(0.0, f64::max);
            json!({ "base": base, "rows": rows.len(), "max_gap": gap, "max_probability": max_p,
                    "bound": 1.0 - model.lambda() * model.lambda() })
        }
        Mode::LoopCheck => {
            let tau = config.grid.tau;
            let cert = certify_loop(&built.field, tau, steps, tolerances.loop_deviation)?;
            let spec = built.program.as_ref().and_then(|p| check_loop_condition(p, tau, WINDING_TOL));
            let report = LoopReport {
                tau,
                l: spec.map(|s| s.l),
                n: spec.map(|s| s.n),
                deviation: cert.deviation,
                global_phase: cert.global_phase,
                deviation_2tau: cert.deviation_twice,
                periodic: cert.periodic,
                tolerance: cert.tolerance,
                certified: cert.is_valid(),
            };
            sink.write_with(|w| write_json(w, &report))?;
            if !report.certified {
                return Err(CliError::Certification(format!(
                    "U(tau) deviates from a scalar by {} >= {} at tau = {tau}",
                    report.deviation, report.tolerance
                )));
            }
            serde_json::to_value(&report).expect("report serializes")
        }
        Mode::Phase => {
            let tau = config.grid.tau;
            let d = phase_decomposition(
                &built.field,
                Spinor::from_bloch(n0),
                tau,
                steps,
                tolerances.loop_deviation,
            )?;
            let closed = match &built.program {
                Some(prog) if config.initial.phi == 0.0 => check_loop_condition(prog, tau, WINDING_TOL)
                    .map(|spec| solid_angle_closed_form(prog, &spec, config.initial.theta))
                    .transpose()?,
                _ => None,
            };
            let report = PhaseReport {
                tau,
                total: d.total,
                dynamical: d.dynamical,
                geometric: d.geometric,
                solid_angle: d.solid_angle,
                solid_angle_closed_form: closed,
                residual: d.residual(),
                deviation: d.deviation,
                tolerance: tolerances.phase,
            };
            sink.write_with(|w| write_json(w, &report))?;
            if report.residual.is_nan() || report.residual.abs() >= tolerances.phase {
                return Err(CliError::Certification(format!(
                    "geometric phase misses -solid_angle/2 by {} (tolerance {})",
                    report.residual, tolerances.phase
                )));
            }
            serde_json::to_value(&report).expect("report serializes")
        }
    };
    Ok(Outcome { mode, sink, summary })
}

fn resonance_model(config: &RunConfig) -> Result<ResonanceModel<f64>, CliError> {
    match &config.field {
        FieldSpec::Uniform { alpha0, beta0, axis } => {
            Ok(ResonanceModel::uniform(*alpha0, *beta0, axis.chi()?)?)
        }
        FieldSpec::ConstantB3 { b0, axis, alpha: None, beta: Some(beta) } => {
            Ok(ResonanceModel::constant_b3(*b0, program_from_terms(beta)?, axis.chi()?)?)
        }
        FieldSpec::ConstantB3 { b0, axis, alpha: Some(alpha), beta: None } => {
            Ok(ResonanceModel::constant_b3_from_alpha(*b0, program_from_terms(alpha)?, axis.chi()?)?)
        }
        other => Err(CliError::config(format!(
            "resonance mode needs a 'uniform' or 'constant_b3' field, not '{}'",
            field_kind(other)
        ))),
    }
}
