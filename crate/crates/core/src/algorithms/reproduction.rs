use super::AlgorithmConfig;
use crate::error::Result;
use crate::operators::{bitflip_in_place, tournament, uniform_crossover};
use crate::pareto::{BitString, Solution};
use rand::Rng;

/// Baseline variation: tournament on `(rank, larger secondary)` with random
/// tie-breaks, uniform crossover with probability `crossover_rate`, then
/// bit-flip mutation. Returns `count` unevaluated offspring genomes.
pub fn elitist_reproduce<R: Rng + ?Sized>(
    population: &[Solution],
    ranks: &[usize],
    secondary: Option<&[f64]>,
    config: &AlgorithmConfig,
    count: usize,
    rng: &mut R,
) -> Result<Vec<BitString>> {
    debug_assert_eq!(population.len(), ranks.len());
    let n_bits = population.first().map_or(0, |s| s.genome.len());
    let p = config.mutation_rate(n_bits)?;
    let better = |a: usize, b: usize| {
        ranks[a].cmp(&ranks[b]).then_with(|| match secondary {
            Some(sec) => sec[b].total_cmp(&sec[a]),
            None => std::cmp::Ordering::Equal,
        })
    };

    let mut offspring = Vec::with_capacity(count);
    while offspring.len() < count {
        let a = tournament(population.len(), config.tournament_size, rng, better);
        let b = tournament(population.len(), config.tournament_size, rng, better);
        let (pa, pb) = (&population[a].genome, &population[b].genome);
        let (mut c1, mut c2) = if rng.gen::<f64>() < config.crossover_rate {
            uniform_crossover(pa, pb, rng)?
        } else {
            (pa.clone(), pb.clone())
        };
        bitflip_in_place(&mut c1, p, rng);
        offspring.push(c1);
        if offspring.len() < count {
            bitflip_in_place(&mut c2, p, rng);
            offspring.push(c2);
        }
    }
    Ok(offspring)
}
