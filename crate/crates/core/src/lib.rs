//! Non-elitist and elitist evolutionary multi-objective optimisation on
//! bit-string benchmarks.
//!
//! The crate provides:
//!
//! - [`pareto`]: dominance, non-dominated sorting, the unbounded archive.
//! - [`problems`]: multi-objective 0/1 knapsack and NK-landscape instances.
//! - [`operators`]: tournament selection, bit-flip mutation, uniform crossover.
//! - [`algorithms`]: NE-MOEA and the NSGA-II, SMS-EMOA and NSGA-III baselines.
//! - [`indicators`]: exact bi-objective hypervolume and a Monte-Carlo estimate.
//! - [`stats`]: the Wilcoxon rank-sum test and result summaries.
//! - [`harness`]: experiment configuration, execution and reporting.

pub mod algorithms;
pub mod error;
pub mod harness;
pub mod indicators;
pub mod operators;
pub mod pareto;
pub mod problems;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use rng::RandomSource;
