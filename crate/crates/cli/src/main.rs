use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use spinforge_cli::{run, CliError, Mode, Overrides, RunConfig};

/// Spin-1/2 dynamics in time-dependent fields.
#[derive(Parser)]
#[command(name = "spinforge", version)]
struct Args {
    /// Operation to run.
    #[arg(value_enum)]
    mode: Mode,
    /// Configuration file, or the name of a bundled configuration
    /// (fig1a, fig1b, fresnel-loop, rabi).
    #[arg(long)]
    config: String,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<String>,
    /// Integrator steps per period.
    #[arg(long)]
    steps: Option<usize>,
    /// Loop-certification tolerance on the propagator deviation.
    #[arg(long)]
    tol: Option<f64>,
}

fn execute(args: Args) -> Result<(), CliError> {
    let config = RunConfig::load(&args.config)?;
    let overrides = Overrides { out: args.out.map(PathBuf::from), steps: args.steps, tol: args.tol };
    let outcome = run(args.mode, &config, &overrides)?;
    // the summary never shares a stream with the primary output
    if outcome.sink.is_stdout() {
        eprintln!("{}", outcome.summary);
    } else {
        println!("{}", outcome.summary);
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("{}", CliError::config(first));
            return ExitCode::from(1);
        }
    };
    match execute(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
