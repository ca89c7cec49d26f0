//! `godel sweep`: evaluate bounding and closure reports over a parameter
//! grid described by a TOML file, one JSON record per grid point plus an
//! aggregate summary.

use crate::manifest::RunManifest;
use crate::output::{write_text, CliError};
use clap::Args;
use godel_core::analysis::{
    bounding_scan, no_closed_geodesic_audit, BoundReport, PeriodDriftReport,
};
use godel_core::extremal::{GeodesicClass, GeodesicParams, ParamsRecord};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// TOML grid specification
    #[arg(long)]
    pub grid: PathBuf,
    /// Output directory (created if missing)
    #[arg(long)]
    pub output: PathBuf,
    /// Shuffle the evaluation order (outputs stay in grid order)
    #[arg(long)]
    pub seed: Option<u64>,
}

fn default_t_samples() -> usize {
    2048
}

/// Grid file: classes plus explicit values and/or fractions of the class
/// bound (for phi3) and of the period (for t0).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridSpec {
    classes: Vec<String>,
    #[serde(default)]
    phi0: Vec<f64>,
    #[serde(default)]
    phi3: Vec<f64>,
    #[serde(default)]
    phi3_frac: Vec<f64>,
    #[serde(default)]
    t0: Vec<f64>,
    #[serde(default)]
    t0_frac: Vec<f64>,
    #[serde(default = "default_t_samples")]
    t_samples: usize,
}

fn build_grid(spec: &GridSpec) -> Result<Vec<GeodesicParams>, CliError> {
    let mut grid = Vec::new();
    for class_name in &spec.classes {
        let class: GeodesicClass = class_name.parse().map_err(CliError::Input)?;
        let phi0_values: Vec<f64> = match class {
            GeodesicClass::Isotropic => vec![1.0],
            GeodesicClass::Timelike => {
                if spec.phi0.is_empty() {
                    return Err(CliError::Input(
                        "timelike sweeps need at least one phi0 value".into(),
                    ));
                }
                spec.phi0.clone()
            }
        };
        for &phi0 in &phi0_values {
            let bound_sq = phi0 * phi0 - class.control_norm_sq();
            if bound_sq < 0.0 {
                eprintln!("warning: skipping phi0 = {phi0} ({class}): below the class bound");
                continue;
            }
            let bound = bound_sq.sqrt();
            let mut phi3_values = spec.phi3.clone();
            phi3_values.extend(spec.phi3_frac.iter().map(|f| f * bound));
            if phi3_values.is_empty() {
                phi3_values.push(0.0);
            }
            for &phi3 in &phi3_values {
                let base = match GeodesicParams::new(class, phi0, phi3, 0.0) {
                    Ok(p) => p,
                    Err(e) => {
                        eprintln!("warning: skipping grid point: {e}");
                        continue;
                    }
                };
                let mut t0_values = spec.t0.clone();
                t0_values.extend(
                    spec.t0_frac
                        .iter()
                        .map(|f| f * 2.0 * std::f64::consts::PI / base.omega()),
                );
                if t0_values.is_empty() {
                    t0_values.push(0.0);
                }
                for &t0 in &t0_values {
                    match GeodesicParams::new(class, phi0, phi3, t0) {
                        Ok(p) => grid.push(p),
                        Err(e) => eprintln!("warning: skipping grid point: {e}"),
                    }
                }
            }
        }
    }
    Ok(grid)
}

#[derive(Serialize)]
struct PointRecord {
    index: usize,
    params: ParamsRecord,
    bound: BoundReport,
    audit: PeriodDriftReport,
}

#[derive(Serialize)]
struct SweepSummary {
    manifest: RunManifest,
    grid_size: usize,
    aggregate: BoundReport,
    all_closure_excluded: bool,
    cone_violations: usize,
    x1_excursions_above_limit: usize,
    x2_beyond_reference_box: usize,
    spurious_returns: usize,
}

pub fn run(args: &SweepArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.grid)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", args.grid.display())))?;
    let spec: GridSpec =
        toml::from_str(&text).map_err(|e| CliError::Input(format!("malformed grid spec: {e}")))?;
    if spec.t_samples < 2 {
        return Err(CliError::Input("t_samples must be at least 2".into()));
    }
    let grid = build_grid(&spec)?;
    if grid.is_empty() {
        return Err(CliError::Input(
            "the grid specification yields no points".into(),
        ));
    }
    std::fs::create_dir_all(&args.output)
        .map_err(|e| CliError::Input(format!("cannot create {}: {e}", args.output.display())))?;

    let mut order: Vec<usize> = (0..grid.len()).collect();
    if let Some(seed) = args.seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut points: Vec<Option<PointRecord>> = (0..grid.len()).map(|_| None).collect();
    for &idx in &order {
        let params = grid[idx];
        let bound = bounding_scan(std::slice::from_ref(&params), spec.t_samples);
        let audit = no_closed_geodesic_audit(std::slice::from_ref(&params))
            .pop()
            .expect("one report per point");
        points[idx] = Some(PointRecord {
            index: idx,
            params: params.record(),
            bound,
            audit,
        });
    }

    let mut cone_violations = 0;
    let mut x1_excursions = 0;
    let mut x2_beyond = 0;
    let mut spurious = 0;
    let mut all_excluded = true;
    for (idx, point) in points.iter().enumerate() {
        let point = point.as_ref().expect("filled above");
        cone_violations += usize::from(!point.bound.cone_ok);
        x1_excursions += usize::from(point.bound.x1_above_limit.is_some());
        x2_beyond += usize::from(point.bound.x2_beyond_box.is_some());
        spurious += usize::from(point.audit.spurious_return.is_some());
        all_excluded &= point.audit.verdict == "no closed causal geodesic";
        let path = args.output.join(format!("point_{idx:04}.json"));
        write_text(
            &path,
            &serde_json::to_string_pretty(point).expect("record serializes"),
        )?;
    }

    let mut manifest = RunManifest::new("sweep", args.seed);
    manifest.set("grid_file", args.grid.display().to_string());
    manifest.set("t_samples", spec.t_samples);
    manifest.set("grid_size", grid.len());
    let summary = SweepSummary {
        manifest,
        grid_size: grid.len(),
        aggregate: bounding_scan(&grid, spec.t_samples),
        all_closure_excluded: all_excluded,
        cone_violations,
        x1_excursions_above_limit: x1_excursions,
        x2_beyond_reference_box: x2_beyond,
        spurious_returns: spurious,
    };
    write_text(
        &args.output.join("summary.json"),
        &serde_json::to_string_pretty(&summary).expect("summary serializes"),
    )?;
    println!(
        "swept {} grid points into {} (closure excluded everywhere: {})",
        grid.len(),
        args.output.display(),
        all_excluded
    );
    Ok(())
}
