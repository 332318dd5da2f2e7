use super::{rank_population, AlgorithmConfig, RunState};
use crate::error::Result;
use crate::operators::{bitflip_mutate, tournament_select};
use crate::pareto::Solution;
use crate::problems::Problem;
use crate::rng::RandomSource;

/// One non-elitist generation: rank `P_t` by non-dominated sorting, draw `N`
/// parents by `k`-tournament on rank, mutate each (no crossover), and make
/// the offspring the next population outright.
///
/// Returns the offspring, which are also the new population.
pub fn ne_moea_step<P: Problem + ?Sized>(
    state: &mut RunState,
    problem: &P,
    config: &AlgorithmConfig,
    rng: &mut RandomSource,
) -> Result<Vec<Solution>> {
    let p = config.mutation_rate(problem.num_bits())?;
    let ranks = rank_population(&state.population).ranks;
    let n = state.population.len();
    let mut offspring = Vec::with_capacity(n);
    for _ in 0..n {
        let parent = tournament_select(&ranks, config.tournament_size, rng);
        let child = bitflip_mutate(&state.population[parent].genome, p, rng);
        offspring.push(state.evaluate(problem, child));
    }
    state.population = offspring.clone();
    Ok(offspring)
}
