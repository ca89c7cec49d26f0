//! Output plumbing: error-to-exit-code mapping, numeric formatting and the
//! CSV/JSON writers shared by the subcommands.

use crate::manifest::RunManifest;
use godel_core::chart::Chart;
use godel_core::extremal::ParamsRecord;
use serde::Serialize;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

/// Input/validation problems exit with 1, verification failures with 2.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Verification(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "error: {msg}"),
            CliError::Verification(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

pub fn input_error(err: impl fmt::Display) -> CliError {
    CliError::Input(err.to_string())
}

/// Shortest round-trip decimal form; zero prints as "0" (negative zero
/// included), full precision (up to 17 significant digits) otherwise.
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    format!("{v}")
}

/// Column header of a curve CSV in the given chart. The cartesian schema is
/// the canonical "t,x0,x1,x2,x3"; the other charts carry their own names
/// and a per-row domain flag where the map can degenerate.
pub fn chart_header(chart: Chart) -> &'static str {
    match chart {
        Chart::Cartesian => "t,x0,x1,x2,x3",
        Chart::Cylindrical => "t,r,phi,t_cyl,x3,in_domain",
        Chart::Kundt => "t,t_k,x,y,z",
    }
}

/// One output row: curve parameter, four chart coordinates, and an
/// optional in-domain flag (only meaningful for charts that can degenerate).
#[derive(Clone, Debug, Serialize)]
pub struct CurveRow {
    pub t: f64,
    pub x: [f64; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_domain: Option<bool>,
}

pub fn csv_line(chart: Chart, row: &CurveRow) -> String {
    let mut cells = vec![fmt_num(row.t)];
    cells.extend(row.x.iter().map(|v| fmt_num(*v)));
    if chart == Chart::Cylindrical {
        cells.push(
            if row.in_domain.unwrap_or(true) {
                "1"
            } else {
                "0"
            }
            .to_string(),
        );
    }
    cells.join(",")
}

pub fn render_csv(chart: Chart, rows: &[CurveRow]) -> String {
    let mut out = String::from(chart_header(chart));
    out.push('\n');
    for row in rows {
        out.push_str(&csv_line(chart, row));
        out.push('\n');
    }
    out
}

/// The JSON curve document: {"manifest": …, "params": …, "samples": […]}.
#[derive(Serialize)]
pub struct CurveDoc<'a> {
    pub manifest: &'a RunManifest,
    pub params: &'a ParamsRecord,
    pub samples: &'a [CurveRow],
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

/// Write the CSV data file plus its manifest sidecar.
pub fn write_csv_with_manifest(
    path: &Path,
    chart: Chart,
    rows: &[CurveRow],
    manifest: &RunManifest,
) -> Result<(), CliError> {
    write_text(path, &render_csv(chart, rows))?;
    let sidecar = sidecar_path(path);
    let text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    write_text(&sidecar, &text)
}

pub fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut name = path.as_os_str().to_os_string();
    name.push(".manifest.json");
    std::path::PathBuf::from(name)
}

pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_text(p, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("cannot write to stdout: {e}"))),
    }
}
