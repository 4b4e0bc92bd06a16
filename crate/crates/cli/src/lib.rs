//! Configuration-driven experiment runner behind the `speclab` binary.

// `!(a < b)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod emit;
pub mod error;
pub mod run;

use std::path::Path;

use rayon::prelude::*;
use serde_json::json;

pub use config::ExperimentConfig;
pub use error::CliError;
pub use run::{run_experiment, Status, Verb};

/// Process exit codes.
pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

/// Runs every experiment (up to `jobs` at once; 0 means one per core), writes
/// the per-experiment files and `summary.json` in config order, and returns
/// the exit code.
pub fn run_config(config: &ExperimentConfig, verb: Verb, out: &Path, jobs: usize) -> Result<u8, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Runtime(format!("thread pool: {e}")))?;
    let results: Vec<_> = pool.install(|| config.experiments.par_iter().map(|e| run_experiment(e, verb)).collect());

    let mut summary = Vec::with_capacity(results.len());
    let mut code = EXIT_PASS;
    for (e, result) in config.experiments.iter().zip(&results) {
        let status = result.status();
        let files = emit::emit_experiment(out, e, verb, result)?;
        code = code.max(match status {
            Status::Pass => EXIT_PASS,
            Status::Fail => EXIT_FAIL,
            Status::Error => EXIT_ERROR,
        });
        let files: Vec<String> = files
            .iter()
            .map(|p| p.strip_prefix(out).unwrap_or(p).to_string_lossy().into_owned())
            .collect();
        summary.push(json!({ "name": e.name, "status": status, "files": files }));
    }
    let summary = json!({ "verb": verb.name(), "experiments": summary });
    emit::write_file(&out.join("summary.json"), &emit::pretty(&summary))?;
    Ok(code)
}
