//! Independent reference implementations used by the integration tests.
#![allow(dead_code)]

use nemoea::pareto::BitString;
use nemoea::problems::KnapsackInstance;

/// `a` weakly better everywhere and strictly better somewhere (maximization).
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
}

/// Front ranks (1-based) by repeatedly peeling the non-dominated layer.
pub fn peel_ranks(points: &[Vec<f64>]) -> Vec<usize> {
    let mut rank = vec![0usize; points.len()];
    let mut remaining: Vec<usize> = (0..points.len()).collect();
    let mut level = 0;
    while !remaining.is_empty() {
        level += 1;
        let layer: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| !remaining.iter().any(|&j| dominates(&points[j], &points[i])))
            .collect();
        for &i in &layer {
            rank[i] = level;
        }
        remaining.retain(|i| !layer.contains(i));
    }
    rank
}

/// Indices of the non-dominated points, keeping one index per distinct vector.
pub fn nondominated_unique(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if points.iter().any(|q| dominates(q, p)) {
            continue;
        }
        if points[..i].iter().any(|q| q == p) {
            continue;
        }
        out.push(p.clone());
    }
    out
}

/// Hypervolume over `(0, 0)`-anchored boxes by counting cells of the
/// coordinate-compressed grid. Cubic, but shares no code with the sweep.
pub fn grid_hypervolume(points: &[Vec<f64>], reference: [f64; 2]) -> f64 {
    let pts: Vec<&Vec<f64>> = points.iter().filter(|p| p[0] > reference[0] && p[1] > reference[1]).collect();
    let mut xs: Vec<f64> = pts.iter().map(|p| p[0]).chain([reference[0]]).collect();
    let mut ys: Vec<f64> = pts.iter().map(|p| p[1]).chain([reference[1]]).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    ys.sort_by(f64::total_cmp);
    ys.dedup();
    let mut total = 0.0;
    for i in 0..xs.len().saturating_sub(1) {
        for j in 0..ys.len().saturating_sub(1) {
            let (cx, cy) = (xs[i + 1], ys[j + 1]);
            if pts.iter().any(|p| p[0] >= cx && p[1] >= cy) {
                total += (xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j]);
            }
        }
    }
    total
}

/// Two-sided exact rank-sum p-value by enumerating every split of the pooled
/// sample: the share of splits whose first-group rank sum is at least as far
/// from its mean as the observed one.
pub fn permutation_p(a: &[f64], b: &[f64]) -> f64 {
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let n = pooled.len();
    let ranks: Vec<f64> = pooled
        .iter()
        .map(|&v| {
            let below = pooled.iter().filter(|&&w| w < v).count() as f64;
            let equal = pooled.iter().filter(|&&w| w == v).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect();
    let observed: f64 = ranks[..a.len()].iter().sum();
    let centre = a.len() as f64 * (n as f64 + 1.0) / 2.0;
    let dev = (observed - centre).abs();
    let (mut hits, mut total) = (0u64, 0u64);
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        total += 1;
        let s: f64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
        if (s - centre).abs() >= dev - 1e-9 {
            hits += 1;
        }
    }
    hits as f64 / total as f64
}

/// True Pareto front of a knapsack instance by enumerating all `2^n` genomes.
pub fn knapsack_front(kp: &KnapsackInstance) -> Vec<Vec<f64>> {
    let n = kp.profits()[0].len();
    assert!(n <= 20);
    let m = kp.profits().len();
    let mut feasible = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let ok = (0..m).all(|j| {
            let w: f64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| kp.weights()[j][i]).sum();
            w <= kp.capacities()[j]
        });
        if ok {
            feasible.push(
                (0..m)
                    .map(|j| (0..n).filter(|i| mask >> i & 1 == 1).map(|i| kp.profits()[j][i]).sum())
                    .collect::<Vec<f64>>(),
            );
        }
    }
    let mut front: Vec<Vec<f64>> = Vec::new();
    feasible.sort_by(|a: &Vec<f64>, b| b[0].total_cmp(&a[0]).then(b[1].total_cmp(&a[1])));
    for p in &feasible {
        if !front.iter().any(|q| dominates(q, p) || q == p) {
            front.retain(|q| !dominates(p, q));
            front.push(p.clone());
        }
    }
    front
}

pub fn mask_genome(mask: u32, n: usize) -> BitString {
    BitString::from_bits((0..n).map(|i| mask >> i & 1 == 1).collect())
}
