use super::{elitist_reproduce, rank_population, AlgorithmConfig, RunState};
use crate::error::{Error, Result};
use crate::indicators::contributions_2d;
use crate::pareto::{FrontPartition, Population, Solution};
use crate::problems::Problem;
use crate::rng::RandomSource;

/// Exclusive hypervolume contribution of every member within its own front.
fn contributions_by_member(population: &[Solution], partition: &FrontPartition, reference: [f64; 2]) -> Vec<f64> {
    let mut out = vec![0.0; population.len()];
    for front in &partition.fronts {
        let points: Vec<&[f64]> = front.iter().map(|&i| population[i].objectives.as_slice()).collect();
        for (&i, c) in front.iter().zip(contributions_2d(&points, reference)) {
            out[i] = c;
        }
    }
    out
}

/// Steady-state SMS-EMOA replacement: add `offspring`, then drop the member
/// of the worst front with the smallest exclusive hypervolume contribution.
/// Ties remove the most recently added member (highest union index).
pub fn sms_emoa_update(population: Population, offspring: Solution, reference: [f64; 2]) -> Result<Population> {
    let m = offspring.objectives.dim();
    if m != 2 {
        return Err(Error::UnsupportedDimension(m));
    }
    if let Some(bad) = population.iter().find(|s| s.objectives.dim() != 2) {
        return Err(Error::DimensionMismatch { expected: 2, found: bad.objectives.dim() });
    }
    let mut union = population;
    union.push(offspring);
    let partition = rank_population(&union);
    let worst = partition.fronts.last().expect("non-empty union");
    let victim = if worst.len() == 1 {
        worst[0]
    } else {
        let points: Vec<&[f64]> = worst.iter().map(|&i| union[i].objectives.as_slice()).collect();
        let contrib = contributions_2d(&points, reference);
        let mut victim_pos = 0;
        for pos in 1..worst.len() {
            // `worst` lists indices in ascending order, so `<=` favours the
            // newest member on ties.
            if contrib[pos] <= contrib[victim_pos] {
                victim_pos = pos;
            }
        }
        worst[victim_pos]
    };
    union.remove(victim);
    Ok(union)
}

/// `N` steady-state steps, each producing and inserting one offspring.
pub(crate) fn generation<P: Problem + ?Sized>(
    state: &mut RunState,
    problem: &P,
    config: &AlgorithmConfig,
    rng: &mut RandomSource,
) -> Result<Vec<Solution>> {
    let n = state.population.len();
    let mut offspring = Vec::with_capacity(n);
    for _ in 0..n {
        let partition = rank_population(&state.population);
        let contrib = contributions_by_member(&state.population, &partition, config.reference_point);
        let genome = elitist_reproduce(&state.population, &partition.ranks, Some(&contrib), config, 1, rng)?
            .pop()
            .expect("one offspring");
        let child = state.evaluate(problem, genome);
        offspring.push(child.clone());
        let population = std::mem::take(&mut state.population);
        state.population = sms_emoa_update(population, child, config.reference_point)?;
    }
    Ok(offspring)
}
