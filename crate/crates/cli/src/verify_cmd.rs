//! `godel verify`: run the full verification battery and print one line per
//! check with the measured residual.

use crate::output::CliError;
use clap::Args;
use godel_core::verify;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Override every threshold with a single tolerance
    #[arg(long)]
    pub tol: Option<f64>,
}

pub fn run(args: &VerifyArgs) -> Result<(), CliError> {
    let reports = verify::run_all();
    let mut all_pass = true;
    let mut total = 0usize;
    let mut passed = 0usize;
    println!(
        "{:<17} {:<52} {:>12} {:>10} {:>7}",
        "criterion", "check", "residual", "threshold", "status"
    );
    for report in &reports {
        for check in &report.checks {
            let threshold = args.tol.unwrap_or(check.threshold);
            let ok = check.passes_at(threshold);
            all_pass &= ok;
            total += 1;
            passed += ok as usize;
            println!(
                "{:<17} {:<52} {:>12.3e} {:>10.1e} {:>7}{}",
                report.name,
                check.name,
                check.residual,
                threshold,
                if ok { "PASS" } else { "FAIL" },
                if check.detail.is_empty() {
                    String::new()
                } else {
                    format!("  [{}]", check.detail)
                }
            );
        }
    }
    println!("{passed}/{total} checks passed");
    if all_pass {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} of {} checks failed",
            total - passed,
            total
        )))
    }
}
