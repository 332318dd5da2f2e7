//! NSGA-III survival with reference-direction niching.
//!
//! Objectives are maximised elsewhere in the crate; niching works on the
//! translated minimisation form `ideal - f`, where `ideal` is the
//! per-objective maximum over the candidate set.

use super::nsga2::take_indices;
use super::{elitist_reproduce, rank_population, AlgorithmConfig, RunState};
use crate::error::Result;
use crate::pareto::{Population, Solution};
use crate::problems::Problem;
use crate::rng::RandomSource;
use rand::seq::SliceRandom;
use rand::Rng;

/// Simplex-lattice directions with `divisions` steps per objective:
/// all vectors of multiples of `1/divisions` summing to one.
pub fn das_dennis(m: usize, divisions: usize) -> Vec<Vec<f64>> {
    fn fill(prefix: &mut Vec<usize>, left: usize, slots: usize, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=left {
            prefix.push(v);
            fill(prefix, left - v, slots - 1, out);
            prefix.pop();
        }
    }
    assert!(m >= 1 && divisions >= 1);
    let mut raw = Vec::new();
    fill(&mut Vec::with_capacity(m), divisions, m, &mut raw);
    raw.into_iter().map(|c| c.into_iter().map(|v| v as f64 / divisions as f64).collect()).collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Largest division count whose lattice has at most `max_directions`
/// members (at least one division).
pub fn direction_count(m: usize, max_directions: usize) -> usize {
    let mut h = 1;
    while binomial(h + 1 + m - 1, m - 1) <= max_directions {
        h += 1;
    }
    h
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Association {
    pub direction: usize,
    /// Perpendicular distance from the point to the direction's ray.
    pub distance: f64,
}

/// Nearest direction by perpendicular distance (lowest index on ties).
pub fn associate(point: &[f64], directions: &[Vec<f64>]) -> Association {
    let norm_sq: f64 = point.iter().map(|v| v * v).sum();
    let mut best = Association { direction: 0, distance: f64::INFINITY };
    for (j, w) in directions.iter().enumerate() {
        let ww: f64 = w.iter().map(|v| v * v).sum();
        let pw: f64 = point.iter().zip(w).map(|(p, w)| p * w).sum();
        let d_sq = (norm_sq - pw * pw / ww).max(0.0);
        let d = d_sq.sqrt();
        if d < best.distance {
            best = Association { direction: j, distance: d };
        }
    }
    best
}

/// Solves `a x = b` by Gaussian elimination with partial pivoting.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for (offset, row) in lower.iter_mut().enumerate() {
            let factor = row[col] / pivot_row[col];
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v -= factor * p;
            }
            b[col + 1 + offset] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| a[row][k] * x[k]).sum();
        x[row] = (b[row] - tail) / a[row][row];
    }
    Some(x)
}

/// Translates maximised objectives to `ideal - f` and divides by the
/// intercepts of the hyperplane through the extreme points, falling back to
/// the per-objective spread when that hyperplane is degenerate.
pub(crate) fn normalize_for_niching(points: &[&[f64]]) -> Vec<Vec<f64>> {
    let m = points[0].len();
    let mut ideal = vec![f64::NEG_INFINITY; m];
    for p in points {
        for (z, &v) in ideal.iter_mut().zip(*p) {
            *z = z.max(v);
        }
    }
    let translated: Vec<Vec<f64>> = points.iter().map(|p| ideal.iter().zip(*p).map(|(z, v)| z - v).collect()).collect();

    let extremes: Vec<Vec<f64>> = (0..m)
        .map(|axis| {
            let asf = |t: &Vec<f64>| {
                t.iter()
                    .enumerate()
                    .map(|(i, v)| v / if i == axis { 1.0 } else { 1e-6 })
                    .fold(f64::NEG_INFINITY, f64::max)
            };
            translated.iter().min_by(|a, b| asf(a).total_cmp(&asf(b))).expect("non-empty").clone()
        })
        .collect();

    let intercepts = solve(extremes, vec![1.0; m])
        .map(|a| a.iter().map(|v| 1.0 / v).collect::<Vec<f64>>())
        .filter(|icpt| icpt.iter().all(|v| v.is_finite() && *v > 1e-10))
        .unwrap_or_else(|| {
            (0..m)
                .map(|i| {
                    let spread = translated.iter().map(|t| t[i]).fold(0.0, f64::max);
                    if spread > 1e-10 {
                        spread
                    } else {
                        1.0
                    }
                })
                .collect()
        });

    translated.into_iter().map(|t| t.iter().zip(&intercepts).map(|(v, c)| v / c).collect()).collect()
}

/// NSGA-III survival on `parents ∪ offspring`, keeping `parents.len()`
/// members: whole fronts by rank, then niche-preserving selection from the
/// split front. Random choices draw from `rng`.
pub fn nsga3_update<R: Rng + ?Sized>(
    parents: Population,
    offspring: Population,
    directions: &[Vec<f64>],
    rng: &mut R,
) -> Population {
    let target = parents.len();
    let mut union = parents;
    union.extend(offspring);
    let partition = rank_population(&union);

    let mut selected: Vec<usize> = Vec::with_capacity(target);
    let mut last: &[usize] = &[];
    for front in &partition.fronts {
        if selected.len() + front.len() <= target {
            selected.extend_from_slice(front);
            if selected.len() == target {
                break;
            }
        } else {
            last = front;
            break;
        }
    }
    if selected.len() == target {
        return take_indices(union, selected);
    }

    let candidates: Vec<usize> = selected.iter().chain(last).copied().collect();
    let points: Vec<&[f64]> = candidates.iter().map(|&i| union[i].objectives.as_slice()).collect();
    let normalized = normalize_for_niching(&points);
    let assoc: Vec<Association> = normalized.iter().map(|p| associate(p, directions)).collect();

    let mut niche_count = vec![0usize; directions.len()];
    for a in &assoc[..selected.len()] {
        niche_count[a.direction] += 1;
    }
    // Positions into `candidates` of split-front members not yet chosen.
    let mut pool: Vec<usize> = (selected.len()..candidates.len()).collect();
    let mut active = vec![true; directions.len()];
    let mut remaining = target - selected.len();
    let mut chosen = Vec::with_capacity(remaining);

    while remaining > 0 {
        let min_count =
            (0..directions.len()).filter(|&j| active[j]).map(|j| niche_count[j]).min().expect("an active direction");
        let least: Vec<usize> = (0..directions.len()).filter(|&j| active[j] && niche_count[j] == min_count).collect();
        let j = *least.choose(rng).expect("non-empty");
        let members: Vec<usize> = pool.iter().copied().filter(|&c| assoc[c].direction == j).collect();
        if members.is_empty() {
            active[j] = false;
            continue;
        }
        let pick = if niche_count[j] == 0 {
            *members
                .iter()
                .min_by(|&&a, &&b| assoc[a].distance.total_cmp(&assoc[b].distance).then(a.cmp(&b)))
                .expect("non-empty")
        } else {
            *members.choose(rng).expect("non-empty")
        };
        pool.retain(|&c| c != pick);
        chosen.push(candidates[pick]);
        niche_count[j] += 1;
        remaining -= 1;
    }

    selected.extend(chosen);
    take_indices(union, selected)
}

pub(crate) fn generation<P: Problem + ?Sized>(
    state: &mut RunState,
    problem: &P,
    config: &AlgorithmConfig,
    directions: &[Vec<f64>],
    rng: &mut RandomSource,
) -> Result<Vec<Solution>> {
    let partition = rank_population(&state.population);
    let n = state.population.len();
    let genomes = elitist_reproduce(&state.population, &partition.ranks, None, config, n, rng)?;
    let offspring: Vec<Solution> = genomes.into_iter().map(|g| state.evaluate(problem, g)).collect();
    let parents = std::mem::take(&mut state.population);
    state.population = nsga3_update(parents, offspring.clone(), directions, rng);
    Ok(offspring)
}
