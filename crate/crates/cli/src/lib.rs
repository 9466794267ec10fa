//! Configuration-driven runs of the spinforge library: simulation, field
//! synthesis, resonance tables, loop certification and phase reports.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{Mode, RunConfig};
pub use error::CliError;
pub use output::{emit_plot_data, read_sampled_field, write_trajectory_csv, Sink};
pub use run::{resolve_steps, run, LoopReport, Outcome, Overrides, PhaseReport};
