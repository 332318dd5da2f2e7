//! Combinatorial benchmark problems over bit strings.

mod io;
mod knapsack;
mod nk;

pub use io::{instance_load, instance_save};
pub use knapsack::KnapsackInstance;
pub use nk::NkInstance;

use crate::pareto::{BitString, ObjectiveVector, Solution};

/// Result of evaluating one genome.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub objectives: ObjectiveVector,
    pub feasible: bool,
    /// Present only when constraint repair changed the input.
    pub repaired_genome: Option<BitString>,
}

/// An evaluatable problem. Evaluation is pure and thread-safe.
pub trait Problem: Send + Sync {
    fn num_bits(&self) -> usize;
    fn num_objectives(&self) -> usize;
    fn evaluate(&self, genome: &BitString) -> Evaluation;

    /// Evaluates `genome` into a solution that keeps the genome as given.
    fn solve(&self, genome: BitString) -> Solution {
        let eval = self.evaluate(&genome);
        Solution::new(genome, eval.objectives)
    }
}

/// Either benchmark family, as stored in instance files.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemInstance {
    Knapsack(KnapsackInstance),
    Nk(NkInstance),
}

impl ProblemInstance {
    pub fn family(&self) -> &'static str {
        match self {
            ProblemInstance::Knapsack(_) => "kp",
            ProblemInstance::Nk(_) => "nk",
        }
    }

    /// Human-readable id such as `KP(n=100)` or `NK(n=100,k=10)`.
    pub fn label(&self) -> String {
        match self {
            ProblemInstance::Knapsack(kp) => format!("KP(n={})", kp.num_bits()),
            ProblemInstance::Nk(nk) => format!("NK(n={},k={})", nk.num_bits(), nk.k()),
        }
    }
}

impl Problem for ProblemInstance {
    fn num_bits(&self) -> usize {
        match self {
            ProblemInstance::Knapsack(p) => p.num_bits(),
            ProblemInstance::Nk(p) => p.num_bits(),
        }
    }

    fn num_objectives(&self) -> usize {
        match self {
            ProblemInstance::Knapsack(p) => p.num_objectives(),
            ProblemInstance::Nk(p) => p.num_objectives(),
        }
    }

    fn evaluate(&self, genome: &BitString) -> Evaluation {
        match self {
            ProblemInstance::Knapsack(p) => p.evaluate(genome),
            ProblemInstance::Nk(p) => p.evaluate(genome),
        }
    }
}
