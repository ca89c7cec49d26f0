//! `godel convert`: translate curve CSV files between charts. Rows that a
//! target chart cannot represent cleanly are flagged, not dropped.

use crate::manifest::RunManifest;
use crate::output::{chart_header, write_csv_with_manifest, CliError, CurveRow};
use crate::trace::chart_row;
use clap::Args;
use godel_core::chart::Chart;
use godel_core::metric::{cyl_to_cartesian, kundt_to_cartesian};
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct ConvertArgs {
    /// Input curve CSV
    #[arg(long)]
    pub input: PathBuf,
    /// Chart of the input file
    #[arg(long)]
    pub from: Chart,
    /// Chart to convert into
    #[arg(long)]
    pub to: Chart,
    /// Output path
    #[arg(long)]
    pub output: PathBuf,
}

fn parse_rows(text: &str, chart: Chart) -> Result<Vec<(f64, [f64; 4])>, CliError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Input("input file is empty".into()))?;
    let expected = chart_header(chart);
    let expected_cols: Vec<&str> = expected.split(',').collect();
    let got_cols: Vec<&str> = header.trim().split(',').collect();
    // t plus four coordinates; a trailing in_domain flag is ignored on input
    let required = 5;
    if got_cols.len() < required || got_cols[..required] != expected_cols[..required] {
        return Err(CliError::Input(format!(
            "header {header:?} does not match the {chart} schema {expected:?}"
        )));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() < required {
            return Err(CliError::Input(format!(
                "line {}: expected at least {required} columns, got {}",
                lineno + 2,
                cells.len()
            )));
        }
        let mut values = [0.0f64; 5];
        for i in 0..required {
            values[i] = cells[i].trim().parse().map_err(|e| {
                CliError::Input(format!(
                    "line {}: cannot parse {:?}: {e}",
                    lineno + 2,
                    cells[i]
                ))
            })?;
        }
        rows.push((values[0], [values[1], values[2], values[3], values[4]]));
    }
    Ok(rows)
}

/// Source chart coordinates to cartesian. Returns None when the point lies
/// outside the source chart's domain.
fn to_cartesian(chart: Chart, coords: [f64; 4]) -> Option<[f64; 4]> {
    if coords.iter().any(|c| !c.is_finite()) {
        return None;
    }
    match chart {
        Chart::Cartesian => Some(coords),
        Chart::Cylindrical => {
            let [r, phi, t_cyl, x3] = coords;
            if r < 0.0 {
                return None;
            }
            let [x0, x1, x2] = cyl_to_cartesian(r, phi, t_cyl);
            Some([x0, x1, x2, x3])
        }
        Chart::Kundt => {
            let [t_k, x, y, z] = coords;
            kundt_to_cartesian(t_k, x, y, z).ok()
        }
    }
}

pub fn run(args: &ConvertArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", args.input.display())))?;
    let rows = parse_rows(&text, args.from)?;

    let mut out_rows = Vec::with_capacity(rows.len());
    let mut warnings = 0usize;
    for (t, coords) in rows {
        match to_cartesian(args.from, coords) {
            Some(cart) => out_rows.push(chart_row(args.to, t, cart)),
            None => {
                warnings += 1;
                eprintln!(
                    "warning: sample at t = {t} lies outside the {} domain",
                    args.from
                );
                out_rows.push(CurveRow {
                    t,
                    x: [f64::NAN; 4],
                    in_domain: Some(false),
                });
            }
        }
    }
    let flagged = out_rows
        .iter()
        .filter(|r| r.in_domain == Some(false))
        .count();
    if flagged > warnings {
        eprintln!(
            "warning: {} rows flagged as degenerate in the {} chart",
            flagged - warnings,
            args.to
        );
    }

    let mut manifest = RunManifest::new("convert", None);
    manifest.set("input", args.input.display().to_string());
    manifest.set("from", args.from.to_string());
    manifest.set("to", args.to.to_string());
    manifest.set("rows", out_rows.len());
    manifest.set("flagged_rows", flagged);
    write_csv_with_manifest(&args.output, args.to, &out_rows, &manifest)
}
