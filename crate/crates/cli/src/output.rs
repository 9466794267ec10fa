//! CSV and JSON writers, and the sampled-field CSV reader.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use spinforge_core::{BlochTrajectory, FieldProgram, Vec3};

use crate::error::CliError;

pub const TRAJECTORY_HEADER: [&str; 7] = ["t", "n1", "n2", "n3", "b1", "b2", "b3"];
pub const RESONANCE_HEADER: [&str; 3] = ["t", "p_closed_form", "p_numeric"];

/// Where a run's primary output goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sink {
    Stdout,
    File(PathBuf),
}

impl Sink {
    pub fn is_stdout(&self) -> bool {
        matches!(self, Sink::Stdout)
    }

    /// Opens the sink and hands a buffered writer to `body`.
    pub fn write_with<F>(&self, body: F) -> Result<(), CliError>
    where
        F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
    {
        match self {
            Sink::Stdout => {
                let stdout = io::stdout();
                let mut w = BufWriter::new(stdout.lock());
                body(&mut w)?;
                w.flush().map_err(|e| CliError::io(format!("stdout: {e}")))
            }
            Sink::File(path) => {
                let file = File::create(path).map_err(|e| io_error(path, e))?;
                let mut w = BufWriter::new(file);
                body(&mut w)?;
                w.flush().map_err(|e| io_error(path, e))
            }
        }
    }
}

fn io_error(path: &Path, e: io::Error) -> CliError {
    CliError::io(format!("'{}': {e}", path.display()))
}

fn csv_writer(w: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::io(format!("csv: {e}"))
}

/// Shortest decimal string that parses back to `v` exactly.
pub fn format_value(v: f64) -> String {
    // both forms carry the minimal round-trip digits; only the layout differs
    let plain = v.to_string();
    let exp = format!("{v:e}");
    if exp.len() < plain.len() {
        exp
    } else {
        plain
    }
}

fn write_rows<I>(w: &mut dyn Write, header: &[&str], rows: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = Vec<f64>>,
{
    let mut out = csv_writer(w);
    out.write_record(header).map_err(csv_error)?;
    for row in rows {
        out.write_record(row.iter().map(|&v| format_value(v))).map_err(csv_error)?;
    }
    out.flush().map_err(|e| CliError::io(format!("csv: {e}")))
}

/// One `t,n1,n2,n3,b1,b2,b3` row per grid node.
pub fn write_trajectory_csv(
    w: &mut dyn Write,
    traj: &BlochTrajectory,
    field: &FieldProgram,
) -> Result<(), CliError> {
    let grid = traj.grid();
    let rows = traj.samples().iter().enumerate().map(|(i, n)| {
        let t = grid.time(i);
        let b = field.eval(t);
        vec![t, n.x(), n.y(), n.z(), b.x, b.y, b.z]
    });
    write_rows(w, &TRAJECTORY_HEADER, rows)
}

/// Writes a trajectory and its driving field as plottable CSV at `path`.
pub fn emit_plot_data(traj: &BlochTrajectory, field: &FieldProgram, path: &Path) -> Result<(), CliError> {
    Sink::File(path.to_path_buf()).write_with(|w| write_trajectory_csv(w, traj, field))
}

pub fn write_resonance_csv(w: &mut dyn Write, rows: &[[f64; 3]]) -> Result<(), CliError> {
    write_rows(w, &RESONANCE_HEADER, rows.iter().map(|r| r.to_vec()))
}

pub fn write_json<S: Serialize>(w: &mut dyn Write, value: &S) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(|e| CliError::io(format!("json: {e}")))?;
    writeln!(w).map_err(|e| CliError::io(format!("json: {e}")))
}

/// Reads `t,b1,b2,b3` columns, located by header name, into a sampled field.
pub fn read_sampled_field(path: &Path) -> Result<FieldProgram, CliError> {
    let mut reader =
        csv::Reader::from_path(path).map_err(|e| CliError::io(format!("'{}': {e}", path.display())))?;
    let headers = reader.headers().map_err(csv_error)?.clone();
    let column = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| CliError::config(format!("'{}' has no '{name}' column", path.display())))
    };
    let idx = [column("t")?, column("b1")?, column("b2")?, column("b3")?];
    let mut times = Vec::new();
    let mut values = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let mut v = [0.0; 4];
        for (slot, &i) in v.iter_mut().zip(&idx) {
            let cell = record.get(i).unwrap_or("");
            *slot = cell.trim().parse().map_err(|_| {
                CliError::config(format!("'{}' row {}: bad number '{cell}'", path.display(), line + 2))
            })?;
        }
        times.push(v[0]);
        values.push(Vec3::new(v[1], v[2], v[3]));
    }
    FieldProgram::sampled(times, values).map_err(|e| CliError::config(e.to_string()))
}
