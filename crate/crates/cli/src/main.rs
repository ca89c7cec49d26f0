//! `godel`: trace closed-form geodesics of the Gödel universe, verify the
//! numeric identities behind them, sweep parameter grids, and convert curve
//! files between charts.
//!
//! Exit codes: 0 success, 1 input/validation error, 2 verification failure.

mod convert;
mod manifest;
mod output;
mod sweep;
mod trace;
mod verify_cmd;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "godel",
    version,
    about = "Gödel-universe geodesics: closed forms, an independent integrator, and the verification suite"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a geodesic through the identity, optionally cross-checked
    /// against the first-order integrator
    Trace(trace::TraceArgs),
    /// Run the verification battery and print a pass/fail table
    Verify(verify_cmd::VerifyArgs),
    /// Evaluate bounding and closure reports over a parameter grid
    Sweep(sweep::SweepArgs),
    /// Convert curve CSV files between charts
    Convert(convert::ConvertArgs),
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    let result = match &cli.command {
        Command::Trace(args) => trace::run(args),
        Command::Verify(args) => verify_cmd::run(args),
        Command::Sweep(args) => sweep::run(args),
        Command::Convert(args) => convert::run(args),
    };
    if let Err(err) = result {
        eprintln!("{err}");
        std::process::exit(err.exit_code());
    }
}
