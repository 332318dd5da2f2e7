//! Experiment harness: configuration, parallel execution, reports, plots and
//! instance files.

pub mod config;
pub mod experiment;
pub mod plot;
pub mod report;

pub use config::{generate_instance, ExperimentConfig, Family, Preset, ProblemSpec};
pub use experiment::{
    parse_results, problem_id, read_results, run_experiment, run_experiment_with_progress, run_source, write_results,
    RunRecord, RESULTS_FILE,
};
pub use plot::{render_svg, Plot, Series};
pub use report::{build_report, render_csv, render_text, Report, Reversal, BASELINE, REVERSAL_TOLERANCE};

use crate::error::Result;
use crate::problems::{instance_save, ProblemInstance};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

/// Writes an instance to `<dir>/<id>_s<seed>.txt` and returns the path with
/// the SHA-256 digest of the file contents.
pub fn write_instance(instance: &ProblemInstance, seed: u64, dir: &Path) -> Result<(PathBuf, String)> {
    let text = instance_save(instance);
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{}_s{seed}.txt", problem_id(instance)));
    std::fs::write(&path, &text)?;
    let digest = Sha256::digest(text.as_bytes());
    let hex = digest.iter().map(|b| format!("{b:02x}")).collect();
    Ok((path, hex))
}
