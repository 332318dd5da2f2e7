use super::{elitist_reproduce, rank_population, AlgorithmConfig, RunState};
use crate::error::Result;
use crate::pareto::{Population, Solution};
use crate::problems::Problem;
use crate::rng::RandomSource;

/// NSGA-II crowding distance of each member of `front` (same order).
/// Extremes of every objective get `f64::INFINITY`.
pub fn crowding_distance<T: AsRef<[f64]>>(points: &[T], front: &[usize]) -> Vec<f64> {
    let len = front.len();
    let mut distance = vec![0.0; len];
    if len == 0 {
        return distance;
    }
    let m = points[front[0]].as_ref().len();
    let mut order: Vec<usize> = (0..len).collect();
    for obj in 0..m {
        let value = |pos: usize| points[front[pos]].as_ref()[obj];
        order.sort_by(|&a, &b| value(a).total_cmp(&value(b)).then(a.cmp(&b)));
        let lo = value(order[0]);
        let hi = value(order[len - 1]);
        distance[order[0]] = f64::INFINITY;
        distance[order[len - 1]] = f64::INFINITY;
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        for w in 1..len.saturating_sub(1) {
            distance[order[w]] += (value(order[w + 1]) - value(order[w - 1])) / span;
        }
    }
    distance
}

/// Crowding distance of every population member within its own front.
pub(crate) fn crowding_by_member(population: &[Solution], fronts: &[Vec<usize>]) -> Vec<f64> {
    let mut out = vec![0.0; population.len()];
    for front in fronts {
        for (&i, d) in front.iter().zip(crowding_distance(population, front)) {
            out[i] = d;
        }
    }
    out
}

/// NSGA-II survival on `parents ∪ offspring`: whole fronts by ascending rank,
/// then the split front by descending crowding distance (lower union index
/// first on ties). Keeps `parents.len()` members.
pub fn nsga2_update(parents: Population, offspring: Population) -> Population {
    let target = parents.len();
    let mut union = parents;
    union.extend(offspring);
    let partition = rank_population(&union);

    let mut chosen: Vec<usize> = Vec::with_capacity(target);
    for front in &partition.fronts {
        if chosen.len() + front.len() <= target {
            chosen.extend_from_slice(front);
            if chosen.len() == target {
                break;
            }
            continue;
        }
        let crowding = crowding_distance(&union, front);
        let mut by_crowding: Vec<usize> = (0..front.len()).collect();
        by_crowding.sort_by(|&a, &b| crowding[b].total_cmp(&crowding[a]).then(front[a].cmp(&front[b])));
        chosen.extend(by_crowding.into_iter().take(target - chosen.len()).map(|pos| front[pos]));
        break;
    }
    take_indices(union, chosen)
}

/// Moves the members at `indices` (in that order) out of `pool`.
pub(crate) fn take_indices(pool: Vec<Solution>, indices: Vec<usize>) -> Vec<Solution> {
    let mut slots: Vec<Option<Solution>> = pool.into_iter().map(Some).collect();
    indices.into_iter().map(|i| slots[i].take().expect("index selected twice")).collect()
}

pub(crate) fn generation<P: Problem + ?Sized>(
    state: &mut RunState,
    problem: &P,
    config: &AlgorithmConfig,
    rng: &mut RandomSource,
) -> Result<Vec<Solution>> {
    let partition = rank_population(&state.population);
    let crowding = crowding_by_member(&state.population, &partition.fronts);
    let n = state.population.len();
    let genomes = elitist_reproduce(&state.population, &partition.ranks, Some(&crowding), config, n, rng)?;
    let offspring: Vec<Solution> = genomes.into_iter().map(|g| state.evaluate(problem, g)).collect();
    let parents = std::mem::take(&mut state.population);
    state.population = nsga2_update(parents, offspring.clone());
    Ok(offspring)
}
