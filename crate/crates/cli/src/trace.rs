//! `godel trace`: sample a geodesic through the identity (optionally left
//! translated to a base point), in any chart, CSV or JSON, with an optional
//! integrator cross-check.

use crate::manifest::RunManifest;
use crate::output::{
    emit, input_error, render_csv, sidecar_path, write_csv_with_manifest, write_text, CliError,
    CurveDoc, CurveRow,
};
use clap::Args;
use godel_core::chart::Chart;
use godel_core::extremal::{AdjointState, GeodesicClass, GeodesicParams};
use godel_core::group::GroupElement;
use godel_core::metric::{cartesian_to_cyl, cartesian_to_kundt};
use godel_core::oracle::{
    godel_coords, godel_initial_psi, integrate_at, IntegratorConfig, LieAlgebraSpec,
};
use std::path::PathBuf;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}; expected csv or json")),
        }
    }
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    /// Causal class: timelike or isotropic
    #[arg(long)]
    pub class: GeodesicClass,
    /// Conserved psi0 (isotropic curves require 1)
    #[arg(long, default_value_t = 1.0)]
    pub phi0: f64,
    /// Slope of x3
    #[arg(long, default_value_t = 0.0)]
    pub phi3: f64,
    /// Phase at which the transverse angle crosses zero
    #[arg(long, default_value_t = 0.0)]
    pub t0: f64,
    /// Initial covector "psi0,psi1,psi2,psi3" (alternative to phi0/phi3/t0)
    #[arg(long)]
    pub psi: Option<String>,
    #[arg(long, default_value_t = 0.0)]
    pub t_min: f64,
    #[arg(long, default_value_t = TWO_PI)]
    pub t_max: f64,
    /// Number of sample intervals (rows = steps + 1)
    #[arg(long, default_value_t = 256)]
    pub steps: usize,
    /// Output chart: cartesian, cylindrical or kundt
    #[arg(long, default_value = "cartesian")]
    pub chart: Chart,
    /// Output format: csv or json
    #[arg(long, default_value = "csv")]
    pub format: OutputFormat,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Also integrate the first-order system and compare
    #[arg(long)]
    pub oracle: bool,
    /// Largest allowed closed-form vs integrator deviation
    #[arg(long, default_value_t = 1e-7)]
    pub tol: f64,
    /// Left-translate the curve by a base point "x0,x1,x2,x3"
    #[arg(long)]
    pub base: Option<String>,
}

pub fn parse_quad(text: &str, what: &str) -> Result<[f64; 4], CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Input(format!(
            "{what} needs four comma-separated reals, got {:?}",
            text
        )));
    }
    let mut out = [0.0; 4];
    for (i, part) in parts.iter().enumerate() {
        out[i] = part
            .trim()
            .parse()
            .map_err(|e| CliError::Input(format!("{what}: cannot parse {part:?}: {e}")))?;
    }
    Ok(out)
}

/// A cartesian position expressed in the requested chart.
pub fn chart_row(chart: Chart, t: f64, cart: [f64; 4]) -> CurveRow {
    match chart {
        Chart::Cartesian => CurveRow {
            t,
            x: cart,
            in_domain: None,
        },
        Chart::Cylindrical => {
            let c = cartesian_to_cyl(cart[0], cart[1], cart[2]);
            CurveRow {
                t,
                x: [c.r, c.phi, c.t, cart[3]],
                in_domain: Some(!c.on_axis),
            }
        }
        Chart::Kundt => CurveRow {
            t,
            x: cartesian_to_kundt(cart[0], cart[1], cart[2], cart[3]),
            in_domain: None,
        },
    }
}

fn resolve_params(args: &TraceArgs) -> Result<GeodesicParams, CliError> {
    match &args.psi {
        Some(text) => {
            let c = parse_quad(text, "--psi")?;
            let psi = AdjointState::new(c[0], c[1], c[2], c[3]);
            GeodesicParams::from_initial(args.class, &psi).map_err(input_error)
        }
        None => GeodesicParams::new(args.class, args.phi0, args.phi3, args.t0).map_err(input_error),
    }
}

/// Integrator positions at the sample times, split into the backward and
/// forward legs from t = 0.
fn oracle_positions(
    params: &GeodesicParams,
    times: &[f64],
) -> Result<Vec<(f64, [f64; 4])>, CliError> {
    let spec = LieAlgebraSpec::godel();
    let psi = godel_initial_psi(params);
    let config = IntegratorConfig::default();
    let backward: Vec<f64> = times.iter().rev().cloned().filter(|t| *t < 0.0).collect();
    let forward: Vec<f64> = times.iter().cloned().filter(|t| *t >= 0.0).collect();
    let mut out = Vec::with_capacity(times.len());
    for leg in [backward, forward] {
        if leg.is_empty() {
            continue;
        }
        for sample in integrate_at(&spec, &psi, &config, &leg)
            .map_err(|e| CliError::Input(format!("integrator: {e}")))?
        {
            out.push((sample.t, godel_coords(&sample.gamma)));
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}

pub fn run(args: &TraceArgs) -> Result<(), CliError> {
    if args.steps == 0 {
        return Err(CliError::Input("--steps must be at least 1".into()));
    }
    if !(args.t_max > args.t_min) {
        return Err(CliError::Input(format!(
            "--t-max ({}) must exceed --t-min ({})",
            args.t_max, args.t_min
        )));
    }
    if args.oracle && args.output.is_none() {
        return Err(CliError::Input(
            "--oracle needs --output (the integrator samples go next to it)".into(),
        ));
    }
    let params = resolve_params(args)?;
    let base = match &args.base {
        Some(text) => {
            let c = parse_quad(text, "--base")?;
            Some(GroupElement::new(c[0], c[1], c[2], c[3]))
        }
        None => None,
    };

    let times: Vec<f64> = (0..=args.steps)
        .map(|i| args.t_min + (args.t_max - args.t_min) * i as f64 / args.steps as f64)
        .collect();
    let place = |g: GroupElement| match &base {
        Some(b) => b.compose(&g),
        None => g,
    };
    let rows: Vec<CurveRow> = times
        .iter()
        .map(|&t| chart_row(args.chart, t, place(params.position(t)).coords()))
        .collect();

    let mut manifest = RunManifest::new("trace", None);
    manifest.set("class", args.class.to_string());
    manifest.set("params", params.record());
    manifest.set("t_min", args.t_min);
    manifest.set("t_max", args.t_max);
    manifest.set("steps", args.steps);
    manifest.set("chart", args.chart.to_string());
    manifest.set(
        "format",
        match args.format {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        },
    );
    if let Some(psi) = &args.psi {
        manifest.set("psi", psi.as_str());
    }
    if let Some(base) = &args.base {
        manifest.set("base", base.as_str());
    }

    let mut deviation = None;
    let mut oracle_rows = Vec::new();
    if args.oracle {
        let numeric = oracle_positions(&params, &times)?;
        let mut worst: f64 = 0.0;
        for (t, cart) in &numeric {
            let exact = params.position(*t).coords();
            for i in 0..4 {
                worst = worst.max((cart[i] - exact[i]).abs());
            }
            let g = GroupElement::new(cart[0], cart[1], cart[2], cart[3]);
            oracle_rows.push(chart_row(args.chart, *t, place(g).coords()));
        }
        manifest.set("oracle_max_deviation", worst);
        manifest.set("oracle_tol", args.tol);
        deviation = Some(worst);
    }

    match args.format {
        OutputFormat::Csv => match &args.output {
            Some(path) => write_csv_with_manifest(path, args.chart, &rows, &manifest)?,
            None => emit(None, &render_csv(args.chart, &rows))?,
        },
        OutputFormat::Json => {
            let doc = CurveDoc {
                manifest: &manifest,
                params: &params.record(),
                samples: &rows,
            };
            let text = serde_json::to_string_pretty(&doc).expect("document serializes");
            emit(args.output.as_deref(), &text)?;
        }
    }
    if args.oracle {
        let path = args.output.as_ref().expect("checked above");
        let mut oracle_path = path.as_os_str().to_os_string();
        oracle_path.push(".oracle.csv");
        write_text(
            std::path::Path::new(&oracle_path),
            &render_csv(args.chart, &oracle_rows),
        )?;
        if args.output.is_some() {
            // keep the sidecar in sync with the deviation fields
            let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
            write_text(&sidecar_path(path), &text)?;
        }
    }
    if let Some(dev) = deviation {
        eprintln!(
            "oracle max deviation: {dev:.3e} (tolerance {:.1e})",
            args.tol
        );
        if dev > args.tol {
            return Err(CliError::Verification(format!(
                "closed form deviates from the integrator by {dev:.3e} > {:.1e}",
                args.tol
            )));
        }
    }
    Ok(())
}
