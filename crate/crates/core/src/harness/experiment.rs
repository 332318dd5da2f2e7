//! Parallel execution of an experiment grid.

use super::config::ExperimentConfig;
use crate::algorithms::{run, AlgorithmKind, RunOutcome};
use crate::error::{Error, Result};
use crate::indicators::{hypervolume_2d, normalize, NormalizationSpec};
use crate::pareto::write_dump;
use crate::problems::{Problem, ProblemInstance};
use crate::rng::RandomSource;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::Instant;

pub const RESULTS_FILE: &str = "results.csv";

/// One row of `results.csv`. Paths are relative to the output directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub problem: String,
    pub algorithm: String,
    pub run: usize,
    pub seed: u64,
    pub hypervolume: Option<f64>,
    pub evaluations: u64,
    pub archive_path: String,
    pub population_path: String,
    pub wall_ms: u64,
}

/// Short file-safe identifier such as `KP-n100` or `NK-n100-k10`.
pub fn problem_id(instance: &ProblemInstance) -> String {
    let m = instance.num_objectives();
    let suffix = if m == 2 { String::new() } else { format!("-m{m}") };
    match instance {
        ProblemInstance::Knapsack(_) => format!("KP-n{}{suffix}", instance.num_bits()),
        ProblemInstance::Nk(nk) => format!("NK-n{}-k{}{suffix}", instance.num_bits(), nk.k()),
    }
}

/// Seed stream of one run; depends only on the master seed and grid position.
pub fn run_source(master_seed: u64, problem: usize, algorithm: usize, run: usize) -> RandomSource {
    RandomSource::new(master_seed).fork(&[problem as u64, algorithm as u64, run as u64])
}

struct Finished {
    problem: usize,
    algorithm: usize,
    run: usize,
    seed: u64,
    outcome: RunOutcome,
    wall_ms: u64,
}

/// Runs every (problem, algorithm, run) cell on `workers` threads, writes
/// dumps under `out_dir/dumps/` and the sorted table to `out_dir/results.csv`.
///
/// Knapsack hypervolumes are normalized by the per-objective maxima of the
/// union of all archives on that instance; NK objectives are already in
/// `[0, 1]` and are used as they are.
pub fn run_experiment(config: &ExperimentConfig, out_dir: &Path, workers: usize) -> Result<Vec<RunRecord>> {
    run_experiment_with_progress(config, out_dir, workers, |_| {})
}

/// As [`run_experiment`], calling `progress` with a one-line summary after
/// each run (in completion order).
pub fn run_experiment_with_progress<F>(
    config: &ExperimentConfig,
    out_dir: &Path,
    workers: usize,
    progress: F,
) -> Result<Vec<RunRecord>>
where
    F: Fn(&str) + Sync,
{
    let instances = config.resolve()?;
    let kinds = config.algorithm_kinds()?;
    let workers = workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;

    let runs = config.experiment.runs;
    let jobs: Vec<(usize, usize, usize)> = (0..instances.len())
        .flat_map(|p| (0..kinds.len()).flat_map(move |a| (0..runs).map(move |r| (p, a, r))))
        .collect();

    let master = config.experiment.master_seed;
    let mut finished = pool.install(|| {
        jobs.par_iter()
            .map(|&(p, a, r)| {
                let mut rng = run_source(master, p, a, r);
                let seed = rng.fingerprint();
                let algo = config.algorithm_config(kinds[a]);
                let start = Instant::now();
                let outcome = run(&instances[p], &algo, &mut rng)?;
                let wall_ms = start.elapsed().as_millis() as u64;
                progress(&format!(
                    "{} {} run {r}: {} evaluations, archive {} in {wall_ms} ms",
                    problem_id(&instances[p]),
                    kinds[a],
                    outcome.evaluations,
                    outcome.archive.len()
                ));
                Ok(Finished { problem: p, algorithm: a, run: r, seed, outcome, wall_ms })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    finished.sort_by_key(|f| (f.problem, f.algorithm, f.run));

    let dumps = out_dir.join("dumps");
    std::fs::create_dir_all(&dumps)?;
    let mut records = Vec::with_capacity(finished.len());
    for (p, instance) in instances.iter().enumerate() {
        let group: Vec<&Finished> = finished.iter().filter(|f| f.problem == p).collect();
        let m = instance.num_objectives();
        let spec = match instance {
            ProblemInstance::Knapsack(_) => {
                let union: Vec<Vec<f64>> = group.iter().flat_map(|f| f.outcome.archive.objective_vectors()).collect();
                NormalizationSpec::from_maxima(&union, m)
            }
            ProblemInstance::Nk(_) => NormalizationSpec::identity(m),
        };
        let pid = problem_id(instance);
        for f in group {
            let archive = f.outcome.archive.objective_vectors();
            let population: Vec<Vec<f64>> =
                f.outcome.population.iter().map(|s| s.objectives.as_slice().to_vec()).collect();
            let hypervolume =
                if m == 2 { Some(hypervolume_2d(&normalize(&archive, &spec), [0.0, 0.0])?) } else { None };

            let algo = kinds[f.algorithm].id();
            let stem = format!("{pid}_{algo}_run{}", f.run);
            let archive_rel = PathBuf::from("dumps").join(format!("{stem}_archive.txt"));
            let population_rel = PathBuf::from("dumps").join(format!("{stem}_population.txt"));
            std::fs::write(out_dir.join(&archive_rel), write_dump(&archive, m))?;
            std::fs::write(out_dir.join(&population_rel), write_dump(&population, m))?;

            records.push(RunRecord {
                problem: pid.clone(),
                algorithm: algo.to_string(),
                run: f.run,
                seed: f.seed,
                hypervolume,
                evaluations: f.outcome.evaluations,
                archive_path: path_string(&archive_rel),
                population_path: path_string(&population_rel),
                wall_ms: f.wall_ms,
            });
        }
    }

    write_results(&records, &out_dir.join(RESULTS_FILE))?;
    Ok(records)
}

fn path_string(path: &Path) -> String {
    path.components().map(|c| c.as_os_str().to_string_lossy()).collect::<Vec<_>>().join("/")
}

pub fn write_results(records: &[RunRecord], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads `results.csv`; a malformed row is reported with its line number.
pub fn read_results(path: &Path) -> Result<Vec<RunRecord>> {
    let text = std::fs::read_to_string(path)?;
    parse_results(&text)
}

pub fn parse_results(text: &str) -> Result<Vec<RunRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for (i, row) in reader.deserialize::<RunRecord>().enumerate() {
        let record = row.map_err(|e| Error::Parse {
            line: e.position().map_or(i + 2, |p| p.line() as usize),
            message: format!("malformed results row: {e}"),
        })?;
        out.push(record);
    }
    Ok(out)
}

/// Rank of an algorithm in the canonical column order.
pub fn algorithm_order(id: &str) -> usize {
    AlgorithmKind::ALL.iter().position(|k| k.id() == id).unwrap_or(usize::MAX)
}
