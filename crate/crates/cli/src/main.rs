//! `casimir`: exact Casimir free energies of concentric hyperspheres, with
//! PFA and small-gap expansions for comparison.
//!
//! Exit status: 0 success, 1 configuration or I/O error, 2 numerical
//! non-convergence (rows are still written, marked in the `status` column),
//! 3 golden-file mismatch, 4 selftest failure.

mod compute;
mod config;
mod output;
mod rows;

use std::process::ExitCode;

use clap::Parser;
use concentric_casimir::selftest;

use crate::config::{Cli, Format, Mode, RunConfig};
use crate::rows::Row;

const CONFIG_ERROR: u8 = 1;
const NONCONVERGENCE: u8 = 2;
const GOLDEN_MISMATCH: u8 = 3;
const SELFTEST_FAILED: u8 = 4;

fn finish<R: Row>(cfg: &RunConfig, o: &compute::Outcome<R>) -> Result<u8, String> {
    for n in &o.notes {
        eprintln!("casimir: {n}");
    }
    let bytes = output::render(cfg, &o.rows).map_err(|e| e.to_string())?;
    output::emit(cfg, &bytes).map_err(|e| e.to_string())?;
    Ok(if o.numerical_failure { NONCONVERGENCE } else { 0 })
}

fn selftest_json(report: &selftest::SelftestReport) -> serde_json::Value {
    let checks: Vec<_> = report
        .checks
        .iter()
        .map(|c| serde_json::json!({"module": c.module, "name": c.name, "passed": c.passed, "detail": c.detail}))
        .collect();
    let fits: Vec<_> = report
        .ln_eps
        .iter()
        .map(|f| {
            serde_json::json!({
                "pair": f.pair.to_string(),
                "eps": f.eps,
                "residual_bare": f.residual_bare,
                "residual_eps_squared": f.residual_eps_squared,
                "fitted_ln_coefficient": f.fitted.0,
                "series_ln_coefficient": f.series_coefficient,
                "selected": f.selected.name(),
                "improvement": f.improvement,
            })
        })
        .collect();
    serde_json::json!({
        "generator": output::GENERATOR,
        "kind": "selftest",
        "passed": report.passed(),
        "checks": checks,
        "ln_eps_fit": fits,
    })
}

fn run(cfg: &RunConfig) -> Result<u8, String> {
    match cfg.mode {
        Mode::Point | Mode::Sweep => {
            let o = compute::results(cfg);
            let mut code = finish(cfg, &o)?;
            if let Some(path) = &cfg.golden {
                let golden = output::load_golden(path).map_err(|e| format!("golden file: {e}"))?;
                let diffs = output::compare_golden(&golden, &o.rows);
                for d in &diffs {
                    eprintln!("casimir: golden mismatch: {d}");
                }
                if !diffs.is_empty() {
                    code = GOLDEN_MISMATCH;
                }
            }
            Ok(code)
        }
        Mode::Compare => finish(cfg, &compute::compare(cfg)),
        Mode::Convergence => finish(cfg, &compute::convergence(cfg)),
        Mode::Selftest => {
            let report = selftest::run();
            let mut text = match cfg.format {
                Format::Csv => selftest::render(&report),
                Format::Json => serde_json::to_string_pretty(&selftest_json(&report)).map_err(|e| e.to_string())?,
            };
            if !text.ends_with('\n') {
                text.push('\n');
            }
            output::emit(cfg, text.as_bytes()).map_err(|e| e.to_string())?;
            Ok(if report.passed() { 0 } else { SELFTEST_FAILED })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match RunConfig::resolve(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("casimir: {e}");
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    let pool = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build(),
        None => rayon::ThreadPoolBuilder::new().build(),
    };
    let pool = match pool {
        Ok(p) => p,
        Err(e) => {
            eprintln!("casimir: thread pool: {e}");
            return ExitCode::from(CONFIG_ERROR);
        }
    };
    match pool.install(|| run(&cfg)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("casimir: {e}");
            ExitCode::from(CONFIG_ERROR)
        }
    }
}
