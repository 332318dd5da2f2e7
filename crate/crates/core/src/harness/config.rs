//! Experiment configuration files (TOML).
//!
//! ```toml
//! [experiment]
//! master_seed = 2024
//! runs = 10
//! population_size = 200
//! generations = 500
//! algorithms = ["NSGA-II", "SMS-EMOA", "NSGA-III", "NE-MOEA"]
//!
//! [ne_moea]            # optional
//! tournament_size = 8
//! delta = 0.05
//!
//! [baselines]          # optional
//! tournament_size = 2
//! crossover_rate = 0.9
//! mutation_rate = 0.01 # omit for 1/n
//!
//! [[problem]]
//! family = "nk"        # or "kp"
//! n = 100
//! k = 10               # NK only
//! m = 2                # default 2
//! seed = 1             # instance seed; or `file = "inst.txt"` instead
//! ```
//!
//! Unknown keys are rejected. `N` and `G` are shared by every algorithm.

use crate::algorithms::{AlgorithmConfig, AlgorithmKind};
use crate::error::{Error, Result};
use crate::operators::{MutationConfig, DEFAULT_DELTA};
use crate::problems::{instance_load, KnapsackInstance, NkInstance, ProblemInstance};
use crate::rng::RandomSource;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Kp,
    Nk,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kp" => Ok(Family::Kp),
            "nk" => Ok(Family::Nk),
            other => Err(Error::Config(format!("unknown family {other:?}, expected kp or nk"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub family: Family,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default = "two")]
    pub m: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub file: Option<PathBuf>,
}

fn two() -> usize {
    2
}

impl ProblemSpec {
    pub fn generated(family: Family, n: usize, k: Option<usize>, seed: u64) -> Self {
        Self { family, n: Some(n), k, m: 2, seed: Some(seed), file: None }
    }

    /// Generates or loads the instance. Relative files resolve against
    /// `base_dir`.
    pub fn resolve(&self, base_dir: &Path) -> Result<ProblemInstance> {
        let inst = match (&self.file, self.seed) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("a problem takes either `seed` or `file`, not both".into()))
            }
            (None, None) => return Err(Error::Config("a problem needs `seed` or `file`".into())),
            (Some(file), None) => {
                let path = base_dir.join(file);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Config(format!("cannot read instance {}: {e}", path.display())))?;
                instance_load(&text)?
            }
            (None, Some(seed)) => {
                let n = self.n.ok_or_else(|| Error::Config("a generated problem needs `n`".into()))?;
                generate_instance(self.family, n, self.k, self.m, seed)?
            }
        };
        let matches = matches!(
            (&inst, self.family),
            (ProblemInstance::Knapsack(_), Family::Kp) | (ProblemInstance::Nk(_), Family::Nk)
        );
        if !matches {
            return Err(Error::Config(format!(
                "instance family {} does not match the configured family",
                inst.family()
            )));
        }
        Ok(inst)
    }
}

pub fn generate_instance(family: Family, n: usize, k: Option<usize>, m: usize, seed: u64) -> Result<ProblemInstance> {
    let mut rng = RandomSource::new(seed);
    let wrap = |e: Error| match e {
        Error::InvalidParameter(msg) => Error::Config(msg),
        other => other,
    };
    match family {
        Family::Kp => {
            if k.is_some() {
                return Err(Error::Config("`k` applies to NK instances only".into()));
            }
            KnapsackInstance::generate(n, m, &mut rng).map(ProblemInstance::Knapsack).map_err(wrap)
        }
        Family::Nk => {
            let k = k.ok_or_else(|| Error::Config("NK instances need `k`".into()))?;
            NkInstance::generate(n, k, m, &mut rng).map(ProblemInstance::Nk).map_err(wrap)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    pub master_seed: u64,
    pub runs: usize,
    pub population_size: usize,
    pub generations: usize,
    pub algorithms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NeMoeaSection {
    #[serde(default = "eight")]
    pub tournament_size: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
}

fn eight() -> usize {
    8
}

fn default_delta() -> f64 {
    DEFAULT_DELTA
}

impl Default for NeMoeaSection {
    fn default() -> Self {
        Self { tournament_size: 8, delta: DEFAULT_DELTA }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaselineSection {
    #[serde(default = "two")]
    pub tournament_size: usize,
    #[serde(default = "point_nine")]
    pub crossover_rate: f64,
    #[serde(default)]
    pub mutation_rate: Option<f64>,
    #[serde(default)]
    pub reference_directions: Option<usize>,
}

fn point_nine() -> f64 {
    0.9
}

impl Default for BaselineSection {
    fn default() -> Self {
        Self { tournament_size: 2, crossover_rate: 0.9, mutation_rate: None, reference_directions: None }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentSection,
    #[serde(default)]
    pub ne_moea: NeMoeaSection,
    #[serde(default)]
    pub baselines: BaselineSection,
    #[serde(rename = "problem")]
    pub problems: Vec<ProblemSpec>,
    /// Directory that relative instance files resolve against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Desk,
    Paper,
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Preset::Desk),
            "paper" => Ok(Preset::Paper),
            other => Err(Error::Config(format!("unknown preset {other:?}, expected desk or paper"))),
        }
    }
}

pub const DEFAULT_MASTER_SEED: u64 = 2024;

impl ExperimentConfig {
    pub fn parse(text: &str, base_dir: impl Into<PathBuf>) -> Result<Self> {
        let mut cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.base_dir = base_dir.into();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Eight bi-objective rows: knapsack with 50, 100, 200, 300 items and
    /// NK-landscapes with the same sizes and `k = 10`; instance seeds 1..=8.
    /// `desk` runs N=200, G=500, R=10; `paper` runs N=10 000, G=5 000, R=30.
    pub fn preset(preset: Preset) -> Self {
        let (runs, population_size, generations) = match preset {
            Preset::Desk => (10, 200, 500),
            Preset::Paper => (30, 10_000, 5_000),
        };
        let sizes = [50, 100, 200, 300];
        let problems = sizes
            .iter()
            .map(|&n| (Family::Kp, n, None))
            .chain(sizes.iter().map(|&n| (Family::Nk, n, Some(10))))
            .enumerate()
            .map(|(i, (family, n, k))| ProblemSpec::generated(family, n, k, i as u64 + 1))
            .collect();
        Self {
            experiment: ExperimentSection {
                master_seed: DEFAULT_MASTER_SEED,
                runs,
                population_size,
                generations,
                algorithms: AlgorithmKind::ALL.iter().map(|a| a.id().to_string()).collect(),
            },
            ne_moea: NeMoeaSection::default(),
            baselines: BaselineSection::default(),
            problems,
            base_dir: PathBuf::from("."),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let e = &self.experiment;
        if e.runs < 1 {
            return Err(Error::Config("`runs` must be at least 1".into()));
        }
        if self.problems.is_empty() {
            return Err(Error::Config("at least one [[problem]] is required".into()));
        }
        let kinds = self.algorithm_kinds()?;
        if kinds.is_empty() {
            return Err(Error::Config("at least one algorithm is required".into()));
        }
        for (i, k) in kinds.iter().enumerate() {
            if kinds[..i].contains(k) {
                return Err(Error::Config(format!("algorithm {k} listed twice")));
            }
        }
        if self.problems.iter().any(|p| p.m != 2) && kinds.contains(&AlgorithmKind::SmsEmoa) {
            return Err(Error::Config("SMS-EMOA supports bi-objective problems only".into()));
        }
        Ok(())
    }

    pub fn algorithm_kinds(&self) -> Result<Vec<AlgorithmKind>> {
        self.experiment.algorithms.iter().map(|s| s.parse()).collect()
    }

    /// Per-algorithm settings; population size and generation count are
    /// shared, which keeps evaluation budgets identical.
    pub fn algorithm_config(&self, kind: AlgorithmKind) -> AlgorithmConfig {
        let e = &self.experiment;
        let base = AlgorithmConfig::preset(kind, e.population_size, e.generations);
        match kind {
            AlgorithmKind::NeMoea => AlgorithmConfig {
                tournament_size: self.ne_moea.tournament_size,
                mutation: MutationConfig::Threshold { delta: self.ne_moea.delta },
                ..base
            },
            _ => AlgorithmConfig {
                tournament_size: self.baselines.tournament_size,
                crossover_rate: self.baselines.crossover_rate,
                mutation: self.baselines.mutation_rate.map_or(MutationConfig::Reciprocal, MutationConfig::Fixed),
                reference_directions: self.baselines.reference_directions,
                ..base
            },
        }
    }

    /// Offspring evaluations per run, excluding the initial population.
    pub fn offspring_evaluations_per_run(&self) -> u64 {
        self.experiment.population_size as u64 * self.experiment.generations as u64
    }

    /// All instances and algorithm settings, checked before any run starts.
    pub fn resolve(&self) -> Result<Vec<ProblemInstance>> {
        self.validate()?;
        let instances = self.problems.iter().map(|p| p.resolve(&self.base_dir)).collect::<Result<Vec<_>>>()?;
        for inst in &instances {
            use crate::problems::Problem;
            for kind in self.algorithm_kinds()? {
                self.algorithm_config(kind)
                    .validate(inst.num_bits(), inst.num_objectives())
                    .map_err(|e| Error::Config(format!("{kind} on {}: {e}", inst.label())))?;
            }
        }
        Ok(instances)
    }
}
