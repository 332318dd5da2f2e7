//! Two-sided Wilcoxon rank-sum (Mann-Whitney U) test and result summaries.

use crate::error::{invalid, Result};
use statrs::distribution::{ContinuousCDF, Normal};

/// Combined sample size up to which the exact permutation distribution is
/// used.
pub const EXACT_LIMIT: usize = 20;

pub const ALPHA: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankSumTest {
    /// Mann-Whitney U of the first sample.
    pub u: f64,
    pub p_value: f64,
    pub significant: bool,
}

fn validate(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() < 2 || b.len() < 2 {
        return Err(invalid(format!(
            "rank-sum test needs at least 2 values per sample, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(invalid("rank-sum test samples must be finite"));
    }
    Ok(())
}

/// Mid-ranks (1-based) of the pooled sample, times two so they stay
/// integral, plus the tie groups' sizes.
fn doubled_midranks(pooled: &[f64]) -> (Vec<u64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..pooled.len()).collect();
    order.sort_by(|&x, &y| pooled[x].total_cmp(&pooled[y]));
    let mut ranks = vec![0u64; pooled.len()];
    let mut ties = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && pooled[order[end]] == pooled[order[start]] {
            end += 1;
        }
        // Positions start+1 ..= end share the average rank (start+1+end)/2.
        let doubled = (start + 1 + end) as u64;
        for &i in &order[start..end] {
            ranks[i] = doubled;
        }
        ties.push(end - start);
        start = end;
    }
    (ranks, ties)
}

struct Ranked {
    n1: usize,
    n2: usize,
    ranks: Vec<u64>,
    ties: Vec<usize>,
    /// Twice the first sample's rank sum.
    observed: u64,
}

impl Ranked {
    fn new(a: &[f64], b: &[f64]) -> Self {
        let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
        let (ranks, ties) = doubled_midranks(&pooled);
        let observed = ranks[..a.len()].iter().sum();
        Self { n1: a.len(), n2: b.len(), ranks, ties, observed }
    }

    fn u(&self) -> f64 {
        self.observed as f64 / 2.0 - (self.n1 * (self.n1 + 1)) as f64 / 2.0
    }

    /// Twice the null mean of the first sample's rank sum.
    fn doubled_mean(&self) -> u64 {
        (self.n1 * (self.n1 + self.n2 + 1)) as u64
    }

    fn all_tied(&self) -> bool {
        self.ties.len() == 1
    }
}

/// Exact two-sided p-value: the fraction of all `C(N, n1)` assignments of the
/// pooled mid-ranks whose rank sum is at least as far from the null mean as
/// the observed one.
fn exact_p(r: &Ranked) -> f64 {
    let total: u64 = r.ranks.iter().sum();
    let n1 = r.n1;
    // ways[c][s]: subsets of size c with doubled rank sum s.
    let mut ways = vec![vec![0u64; total as usize + 1]; n1 + 1];
    ways[0][0] = 1;
    for &rank in &r.ranks {
        let rank = rank as usize;
        for c in (1..=n1).rev() {
            for s in (rank..=total as usize).rev() {
                let add = ways[c - 1][s - rank];
                ways[c][s] += add;
            }
        }
    }
    let mean = r.doubled_mean() as i64;
    let dist = (r.observed as i64 - mean).abs();
    let (mut hit, mut all) = (0u64, 0u64);
    for (s, &w) in ways[n1].iter().enumerate() {
        all += w;
        if (s as i64 - mean).abs() >= dist {
            hit += w;
        }
    }
    hit as f64 / all as f64
}

/// Tie-corrected normal approximation with a 0.5 continuity correction.
fn normal_p(r: &Ranked) -> f64 {
    let (n1, n2) = (r.n1 as f64, r.n2 as f64);
    let n = n1 + n2;
    let tie_term: f64 = r.ties.iter().map(|&t| (t as f64).powi(3) - t as f64).sum();
    let variance = n1 * n2 / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if variance <= 0.0 {
        return 1.0;
    }
    let deviation = (r.u() - n1 * n2 / 2.0).abs();
    let z = ((deviation - 0.5).max(0.0)) / variance.sqrt();
    let std_normal = Normal::new(0.0, 1.0).expect("standard normal");
    (2.0 * std_normal.sf(z)).min(1.0)
}

/// Two-sided rank-sum test: exact for a combined size up to
/// [`EXACT_LIMIT`], normal approximation above.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<RankSumTest> {
    validate(a, b)?;
    let r = Ranked::new(a, b);
    let p_value = if r.all_tied() {
        1.0
    } else if r.n1 + r.n2 <= EXACT_LIMIT {
        exact_p(&r)
    } else {
        normal_p(&r)
    };
    Ok(RankSumTest { u: r.u(), p_value, significant: p_value < ALPHA })
}

/// The exact permutation p-value regardless of sample size. The pooled
/// sample must stay small enough for the rank-sum table (a few hundred).
pub fn rank_sum_p_exact(a: &[f64], b: &[f64]) -> Result<f64> {
    validate(a, b)?;
    let r = Ranked::new(a, b);
    Ok(if r.all_tied() { 1.0 } else { exact_p(&r) })
}

/// The normal-approximation p-value regardless of sample size.
pub fn rank_sum_p_normal(a: &[f64], b: &[f64]) -> Result<f64> {
    validate(a, b)?;
    let r = Ranked::new(a, b);
    Ok(if r.all_tied() { 1.0 } else { normal_p(&r) })
}

pub fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Sample standard deviation (`n - 1` denominator); `None` below two values.
pub fn sample_sd(values: &[f64]) -> Option<f64> {
    if values.len() < 2 {
        return None;
    }
    let mu = mean(values);
    let ss: f64 = values.iter().map(|v| (v - mu).powi(2)).sum();
    Some((ss / (values.len() - 1) as f64).sqrt())
}

/// One scalar result of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation {
    pub problem: String,
    pub algorithm: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryCell {
    pub runs: usize,
    pub mean: f64,
    pub sd: Option<f64>,
    /// Rank-sum test against the baseline; `None` for the baseline itself or
    /// when either side has fewer than two runs.
    pub versus_baseline: Option<RankSumTest>,
    pub best: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryTable {
    pub problems: Vec<String>,
    pub algorithms: Vec<String>,
    pub baseline: String,
    /// Row-major over `problems` x `algorithms`; `None` marks a missing cell.
    pub cells: Vec<Vec<Option<SummaryCell>>>,
}

impl SummaryTable {
    pub fn cell(&self, problem: &str, algorithm: &str) -> Option<&SummaryCell> {
        let p = self.problems.iter().position(|x| x == problem)?;
        let a = self.algorithms.iter().position(|x| x == algorithm)?;
        self.cells[p][a].as_ref()
    }
}

fn push_unique(list: &mut Vec<String>, item: &str) -> usize {
    match list.iter().position(|x| x == item) {
        Some(i) => i,
        None => {
            list.push(item.to_string());
            list.len() - 1
        }
    }
}

/// Mean and sample sd per (problem, algorithm), rank-sum markers against
/// `baseline`, and the best (largest) mean flagged per problem. Problems and
/// algorithms keep their order of first appearance.
pub fn summarize(observations: &[Observation], baseline: &str) -> SummaryTable {
    let mut problems = Vec::new();
    let mut algorithms = Vec::new();
    let mut samples: Vec<Vec<Vec<f64>>> = Vec::new();
    for obs in observations {
        let p = push_unique(&mut problems, &obs.problem);
        let a = push_unique(&mut algorithms, &obs.algorithm);
        samples.resize_with(problems.len(), Vec::new);
        for row in &mut samples {
            row.resize_with(algorithms.len(), Vec::new);
        }
        samples[p][a].push(obs.value);
    }

    let base_idx = algorithms.iter().position(|a| a == baseline);
    let cells = samples
        .iter()
        .map(|row| {
            let mut cells: Vec<Option<SummaryCell>> = row
                .iter()
                .enumerate()
                .map(|(a, values)| {
                    if values.is_empty() {
                        return None;
                    }
                    let versus_baseline = match base_idx {
                        Some(b) if b != a => wilcoxon_rank_sum(values, &row[b]).ok(),
                        _ => None,
                    };
                    Some(SummaryCell {
                        runs: values.len(),
                        mean: mean(values),
                        sd: sample_sd(values),
                        versus_baseline,
                        best: false,
                    })
                })
                .collect();
            let best = cells.iter().flatten().map(|c| c.mean).fold(f64::NEG_INFINITY, f64::max);
            for c in cells.iter_mut().flatten() {
                c.best = c.mean == best;
            }
            cells
        })
        .collect();
    SummaryTable { problems, algorithms, baseline: baseline.to_string(), cells }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_samples() {
        let t = wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(t.p_value, 1.0);
        assert!(!t.significant);
        let t = wilcoxon_rank_sum(&[5.0; 15], &[5.0; 15]).unwrap();
        assert_eq!(t.p_value, 1.0);
    }

    #[test]
    fn fully_separated_triplets() {
        let t = wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(t.u, 0.0);
        assert!((t.p_value - 0.1).abs() < 1e-15);
        assert!(!t.significant);
    }

    #[test]
    fn separated_quintets_are_significant() {
        let t = wilcoxon_rank_sum(&[1.0, 2.0, 3.0, 4.0, 5.0], &[6.0, 7.0, 8.0, 9.0, 10.0]).unwrap();
        assert!((t.p_value - 2.0 / 252.0).abs() < 1e-15);
        assert!(t.significant);
    }

    #[test]
    fn tiny_samples_diverge_from_normal() {
        // With two values per side the exact p cannot drop below 1/3; the
        // normal approximation undershoots it.
        let exact = rank_sum_p_exact(&[1.0, 2.0], &[3.0, 4.0]).unwrap();
        let approx = rank_sum_p_normal(&[1.0, 2.0], &[3.0, 4.0]).unwrap();
        assert!((exact - 1.0 / 3.0).abs() < 1e-15);
        assert!(approx < 0.25);
    }

    #[test]
    fn large_samples_use_normal_path() {
        let a: Vec<f64> = (0..30).map(f64::from).collect();
        let b: Vec<f64> = (30..60).map(f64::from).collect();
        let t = wilcoxon_rank_sum(&a, &b).unwrap();
        assert_eq!(t.p_value, rank_sum_p_normal(&a, &b).unwrap());
        assert!(t.p_value < 1e-9);
    }

    #[test]
    fn rejects_short_samples() {
        assert!(wilcoxon_rank_sum(&[1.0], &[1.0, 2.0]).is_err());
        assert!(wilcoxon_rank_sum(&[1.0, f64::NAN], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn sd_uses_n_minus_one() {
        assert_eq!(sample_sd(&[0.5, 0.5]), Some(0.0));
        assert_eq!(sample_sd(&[1.0, 3.0]), Some(2f64.sqrt()));
        assert_eq!(sample_sd(&[1.0]), None);
    }

    fn obs(problem: &str, algorithm: &str, value: f64) -> Observation {
        Observation { problem: problem.into(), algorithm: algorithm.into(), value }
    }

    #[test]
    fn summary_single_algorithm() {
        let t = summarize(&[obs("P", "A", 0.5), obs("P", "A", 0.5)], "NE-MOEA");
        let c = t.cell("P", "A").unwrap();
        assert_eq!((c.mean, c.sd, c.versus_baseline, c.best), (0.5, Some(0.0), None, true));
    }

    #[test]
    fn summary_identical_runs_have_no_markers() {
        let mut rows = Vec::new();
        for v in [0.1, 0.2, 0.3, 0.4] {
            rows.push(obs("P", "NE-MOEA", v));
            rows.push(obs("P", "NSGA-II", v));
        }
        let t = summarize(&rows, "NE-MOEA");
        assert!(!t.cell("P", "NSGA-II").unwrap().versus_baseline.unwrap().significant);
        assert!(t.cell("P", "NE-MOEA").unwrap().versus_baseline.is_none());
    }

    #[test]
    fn summary_missing_cell_is_absent() {
        let t = summarize(&[obs("P", "A", 1.0), obs("P", "A", 2.0), obs("Q", "B", 1.0)], "A");
        assert!(t.cell("Q", "A").is_none());
        assert!(t.cell("P", "B").is_none());
        assert_eq!(t.cell("Q", "B").unwrap().sd, None);
    }
}
