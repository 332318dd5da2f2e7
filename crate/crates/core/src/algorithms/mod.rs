//! NE-MOEA and the elitist baselines behind one run interface.
//!
//! Every algorithm evaluates `N` random genomes up front and `N` offspring
//! per generation, offering each evaluated solution to an unbounded archive.
//! For knapsack instances the archive stores the repaired genome, while the
//! population keeps the genome as produced by variation.

mod nemoea;
mod nsga2;
mod nsga3;
mod reproduction;
mod sms_emoa;

pub use nemoea::ne_moea_step;
pub use nsga2::{crowding_distance, nsga2_update};
pub use nsga3::{associate, das_dennis, direction_count, nsga3_update, Association};
pub use reproduction::elitist_reproduce;
pub use sms_emoa::sms_emoa_update;

use crate::error::{invalid, Result};
use crate::indicators::hypervolume_2d;
use crate::operators::{MutationConfig, DEFAULT_DELTA};
use crate::pareto::{
    nondominated_sort, nondominated_sort_2d, Archive, BitString, FrontPartition, Population, Solution,
};
use crate::problems::Problem;
use crate::rng::RandomSource;
use rand::Rng;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgorithmKind {
    NeMoea,
    Nsga2,
    SmsEmoa,
    Nsga3,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 4] =
        [AlgorithmKind::Nsga2, AlgorithmKind::SmsEmoa, AlgorithmKind::Nsga3, AlgorithmKind::NeMoea];

    pub fn id(self) -> &'static str {
        match self {
            AlgorithmKind::NeMoea => "NE-MOEA",
            AlgorithmKind::Nsga2 => "NSGA-II",
            AlgorithmKind::SmsEmoa => "SMS-EMOA",
            AlgorithmKind::Nsga3 => "NSGA-III",
        }
    }

    pub fn is_elitist(self) -> bool {
        self != AlgorithmKind::NeMoea
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for AlgorithmKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_ascii_lowercase();
        match norm.as_str() {
            "nemoea" => Ok(AlgorithmKind::NeMoea),
            "nsgaii" | "nsga2" => Ok(AlgorithmKind::Nsga2),
            "smsemoa" => Ok(AlgorithmKind::SmsEmoa),
            "nsgaiii" | "nsga3" => Ok(AlgorithmKind::Nsga3),
            _ => Err(crate::Error::Config(format!("unknown algorithm id {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmConfig {
    pub kind: AlgorithmKind,
    pub population_size: usize,
    pub generations: usize,
    /// Mating tournament size: `k` for NE-MOEA, 2 for the baselines.
    pub tournament_size: usize,
    /// Probability of uniform crossover per mating; unused by NE-MOEA.
    pub crossover_rate: f64,
    pub mutation: MutationConfig,
    /// NSGA-III direction count; `None` picks the largest simplex lattice
    /// not exceeding the population size.
    pub reference_directions: Option<usize>,
    /// Reference point for SMS-EMOA contributions and reported hypervolume.
    pub reference_point: [f64; 2],
}

impl AlgorithmConfig {
    /// The defaults used in the experiments: NE-MOEA with 8-tournament and
    /// threshold mutation, baselines with binary tournament, crossover rate
    /// 0.9 and mutation rate `1/n`.
    pub fn preset(kind: AlgorithmKind, population_size: usize, generations: usize) -> Self {
        let base = Self {
            kind,
            population_size,
            generations,
            tournament_size: 2,
            crossover_rate: 0.9,
            mutation: MutationConfig::Reciprocal,
            reference_directions: None,
            reference_point: [0.0, 0.0],
        };
        match kind {
            AlgorithmKind::NeMoea => Self {
                tournament_size: 8,
                crossover_rate: 0.0,
                mutation: MutationConfig::Threshold { delta: DEFAULT_DELTA },
                ..base
            },
            _ => base,
        }
    }

    pub fn validate(&self, num_bits: usize, num_objectives: usize) -> Result<()> {
        let n = self.population_size;
        if n < 2 {
            return Err(invalid(format!("population size must be at least 2, got {n}")));
        }
        if self.generations < 1 {
            return Err(invalid("generation count must be at least 1"));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(invalid(format!("crossover rate {} outside [0,1]", self.crossover_rate)));
        }
        if self.tournament_size < 1 || self.tournament_size > n {
            return Err(invalid(format!("tournament size {} outside 1..={n}", self.tournament_size)));
        }
        self.mutation.rate(num_bits, self.tournament_size)?;
        let m = num_objectives;
        if self.kind == AlgorithmKind::SmsEmoa && m != 2 {
            return Err(crate::Error::UnsupportedDimension(m));
        }
        if let Some(h) = self.reference_directions {
            if h < 1 {
                return Err(invalid("NSGA-III needs at least one reference direction"));
            }
        }
        Ok(())
    }

    pub fn mutation_rate(&self, n_bits: usize) -> Result<f64> {
        self.mutation.rate(n_bits, self.tournament_size)
    }
}

/// Loop state shared by all algorithms.
#[derive(Debug, Clone)]
pub struct RunState {
    pub population: Population,
    pub generation: usize,
    pub archive: Archive,
    pub evaluations: u64,
}

impl RunState {
    /// `N` uniform random genomes, evaluated and archived.
    pub fn initialize<P: Problem + ?Sized>(problem: &P, population_size: usize, rng: &mut RandomSource) -> Self {
        let mut state = Self {
            population: Vec::with_capacity(population_size),
            generation: 0,
            archive: Archive::new(),
            evaluations: 0,
        };
        for _ in 0..population_size {
            let genome = BitString::from_bits((0..problem.num_bits()).map(|_| rng.gen()).collect());
            let s = state.evaluate(problem, genome);
            state.population.push(s);
        }
        state
    }

    /// Evaluates `genome`, offers it to the archive (repaired form when
    /// repair acted) and returns the solution carrying the original genome.
    pub fn evaluate<P: Problem + ?Sized>(&mut self, problem: &P, genome: BitString) -> Solution {
        let eval = problem.evaluate(&genome);
        self.evaluations += 1;
        self.archive.offer(eval.repaired_genome.as_ref().unwrap_or(&genome), &eval.objectives);
        Solution::new(genome, eval.objectives)
    }
}

/// Result of a complete run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub algorithm: AlgorithmKind,
    pub archive: Archive,
    pub population: Population,
    pub evaluations: u64,
    pub generations: usize,
    /// Raw (unnormalised) archive hypervolume; `None` unless bi-objective.
    pub hypervolume: Option<f64>,
}

/// Ranks a population, taking the `O(N log N)` sweep when bi-objective.
pub(crate) fn rank_population<T: AsRef<[f64]>>(points: &[T]) -> FrontPartition {
    match points.first().map(|p| p.as_ref().len()) {
        Some(2) => nondominated_sort_2d(points),
        _ => nondominated_sort(points),
    }
}

/// Runs `config` on `problem` for the configured number of generations.
pub fn run<P: Problem + ?Sized>(problem: &P, config: &AlgorithmConfig, rng: &mut RandomSource) -> Result<RunOutcome> {
    run_observed(problem, config, rng, |_, _| {})
}

/// Like [`run`], calling `observer` after every generation with the new
/// state and the offspring evaluated in that generation.
pub fn run_observed<P, F>(
    problem: &P,
    config: &AlgorithmConfig,
    rng: &mut RandomSource,
    mut observer: F,
) -> Result<RunOutcome>
where
    P: Problem + ?Sized,
    F: FnMut(&RunState, &[Solution]),
{
    config.validate(problem.num_bits(), problem.num_objectives())?;
    let mut state = RunState::initialize(problem, config.population_size, rng);
    let directions = match config.kind {
        AlgorithmKind::Nsga3 => {
            let m = problem.num_objectives();
            let count = config.reference_directions.unwrap_or(config.population_size);
            das_dennis(m, direction_count(m, count))
        }
        _ => Vec::new(),
    };

    for _ in 0..config.generations {
        let offspring = match config.kind {
            AlgorithmKind::NeMoea => ne_moea_step(&mut state, problem, config, rng)?,
            AlgorithmKind::Nsga2 => nsga2::generation(&mut state, problem, config, rng)?,
            AlgorithmKind::Nsga3 => nsga3::generation(&mut state, problem, config, &directions, rng)?,
            AlgorithmKind::SmsEmoa => sms_emoa::generation(&mut state, problem, config, rng)?,
        };
        state.generation += 1;
        debug_assert_eq!(state.population.len(), config.population_size);
        observer(&state, &offspring);
    }

    let hypervolume = if problem.num_objectives() == 2 {
        Some(hypervolume_2d(state.archive.members(), config.reference_point)?)
    } else {
        None
    };
    Ok(RunOutcome {
        algorithm: config.kind,
        archive: state.archive,
        population: state.population,
        evaluations: state.evaluations,
        generations: state.generation,
        hypervolume,
    })
}

#[cfg(test)]
mod tests;
