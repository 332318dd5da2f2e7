use super::{Evaluation, Problem};
use crate::error::{invalid, Result};
use crate::pareto::{BitString, ObjectiveVector};
use rand::Rng;

/// Multi-objective 0/1 knapsack: one profit row, one weight row and one
/// capacity per objective.
#[derive(Debug, Clone, PartialEq)]
pub struct KnapsackInstance {
    profits: Vec<Vec<f64>>,
    weights: Vec<Vec<f64>>,
    capacities: Vec<f64>,
    /// Items in the order repair removes them.
    removal_order: Vec<usize>,
}

impl KnapsackInstance {
    pub fn new(profits: Vec<Vec<f64>>, weights: Vec<Vec<f64>>, capacities: Vec<f64>) -> Result<Self> {
        let m = capacities.len();
        if m == 0 || profits.len() != m || weights.len() != m {
            return Err(invalid("knapsack needs matching profit, weight and capacity rows"));
        }
        let n = profits[0].len();
        if n == 0 {
            return Err(invalid("knapsack needs at least one item"));
        }
        for (i, (p, w)) in profits.iter().zip(&weights).enumerate() {
            if p.len() != n || w.len() != n {
                return Err(invalid(format!("row {i} does not have {n} items")));
            }
            if p.iter().chain(w).any(|&v| !(v.is_finite() && v > 0.0)) {
                return Err(invalid(format!("row {i} has a non-positive profit or weight")));
            }
            let total: f64 = w.iter().sum();
            let c = capacities[i];
            if !(c.is_finite() && c > 0.0 && c < total) {
                return Err(invalid(format!("capacity {c} must lie in (0, {total})")));
            }
        }

        let max_ratio =
            |j: usize| -> f64 { (0..m).map(|i| profits[i][j] / weights[i][j]).fold(f64::NEG_INFINITY, f64::max) };
        let ratios: Vec<f64> = (0..n).map(max_ratio).collect();
        let mut removal_order: Vec<usize> = (0..n).collect();
        removal_order.sort_by(|&a, &b| ratios[a].total_cmp(&ratios[b]).then(a.cmp(&b)));

        Ok(Self { profits, weights, capacities, removal_order })
    }

    /// Uniform integer profits and weights on `[10, 100]`; each capacity is
    /// half the corresponding total weight.
    pub fn generate<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Self> {
        if n < 1 || m < 2 {
            return Err(invalid(format!("knapsack generation needs n >= 1 and m >= 2, got n={n} m={m}")));
        }
        let table = |rng: &mut R| -> Vec<Vec<f64>> {
            (0..m).map(|_| (0..n).map(|_| f64::from(rng.gen_range(10u32..=100))).collect()).collect()
        };
        let profits = table(rng);
        let weights = table(rng);
        let capacities = weights.iter().map(|w| w.iter().sum::<f64>() / 2.0).collect();
        Self::new(profits, weights, capacities)
    }

    pub fn profits(&self) -> &[Vec<f64>] {
        &self.profits
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn capacities(&self) -> &[f64] {
        &self.capacities
    }

    pub fn is_feasible(&self, genome: &BitString) -> bool {
        self.loads(genome).iter().zip(&self.capacities).all(|(l, c)| l <= c)
    }

    fn loads(&self, genome: &BitString) -> Vec<f64> {
        self.weights.iter().map(|w| w.iter().zip(genome.bits()).filter(|(_, &b)| b).map(|(w, _)| w).sum()).collect()
    }

    /// Greedy repair: drop selected items in increasing order of their best
    /// profit/weight ratio (lower index first on ties) until every capacity
    /// holds. Feasible input comes back unchanged.
    pub fn repair(&self, genome: &BitString) -> BitString {
        self.repair_if_needed(genome).unwrap_or_else(|| genome.clone())
    }

    fn repair_if_needed(&self, genome: &BitString) -> Option<BitString> {
        assert_eq!(genome.len(), self.num_bits(), "genome length");
        let mut loads = self.loads(genome);
        let fits = |loads: &[f64]| loads.iter().zip(&self.capacities).all(|(l, c)| l <= c);
        if fits(&loads) {
            return None;
        }
        let mut repaired = genome.clone();
        for &j in &self.removal_order {
            if !repaired.get(j) {
                continue;
            }
            repaired.set(j, false);
            for (load, w) in loads.iter_mut().zip(&self.weights) {
                *load -= w[j];
            }
            if fits(&loads) {
                break;
            }
        }
        Some(repaired)
    }
}

impl Problem for KnapsackInstance {
    fn num_bits(&self) -> usize {
        self.profits[0].len()
    }

    fn num_objectives(&self) -> usize {
        self.capacities.len()
    }

    fn evaluate(&self, genome: &BitString) -> Evaluation {
        let repaired_genome = self.repair_if_needed(genome);
        let chosen = repaired_genome.as_ref().unwrap_or(genome);
        let objectives = self
            .profits
            .iter()
            .map(|p| p.iter().zip(chosen.bits()).filter(|(_, &b)| b).map(|(p, _)| p).sum())
            .collect();
        Evaluation { objectives: ObjectiveVector::new_unchecked(objectives), feasible: true, repaired_genome }
    }
}
