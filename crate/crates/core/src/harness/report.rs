//! Summary tables over `results.csv`.

use super::experiment::RunRecord;
use crate::stats::{summarize, Observation, SummaryCell, SummaryTable};
use std::fmt::Write;

pub const BASELINE: &str = "NE-MOEA";
/// Mean-hypervolume margin beyond which a baseline beating NE-MOEA is flagged.
pub const REVERSAL_TOLERANCE: f64 = 0.005;

#[derive(Debug, Clone, PartialEq)]
pub struct Reversal {
    pub problem: String,
    pub algorithm: String,
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub table: SummaryTable,
    pub reversals: Vec<Reversal>,
    /// Rows without a hypervolume value (non-bi-objective problems).
    pub skipped: usize,
}

pub fn build_report(records: &[RunRecord]) -> Report {
    let observations: Vec<Observation> = records
        .iter()
        .filter_map(|r| {
            r.hypervolume.map(|value| Observation { problem: r.problem.clone(), algorithm: r.algorithm.clone(), value })
        })
        .collect();
    let skipped = records.len() - observations.len();
    let table = summarize(&observations, BASELINE);

    let mut reversals = Vec::new();
    for problem in &table.problems {
        let Some(base) = table.cell(problem, BASELINE) else { continue };
        for algorithm in &table.algorithms {
            if algorithm == BASELINE {
                continue;
            }
            if let Some(cell) = table.cell(problem, algorithm) {
                let margin = cell.mean - base.mean;
                if margin > REVERSAL_TOLERANCE {
                    reversals.push(Reversal { problem: problem.clone(), algorithm: algorithm.clone(), margin });
                }
            }
        }
    }
    Report { table, reversals, skipped }
}

fn cell_text(cell: &SummaryCell) -> String {
    let sd = cell.sd.map_or_else(|| "-".to_string(), |s| format!("{s:.2e}"));
    let dagger = match &cell.versus_baseline {
        Some(t) if t.significant => " †",
        _ => "",
    };
    format!("{:.4e} ({sd}){dagger}", cell.mean)
}

/// Aligned text: one row per problem, one column per algorithm, entries
/// `mean (sd)`. `*` marks the best mean of a row; `†` marks a significant
/// rank-sum difference from NE-MOEA at the 5% level.
pub fn render_text(report: &Report) -> String {
    let t = &report.table;
    let mut rows: Vec<Vec<String>> =
        vec![std::iter::once("Problem".to_string()).chain(t.algorithms.iter().cloned()).collect()];
    for (p, problem) in t.problems.iter().enumerate() {
        let mut row = vec![problem.clone()];
        for cell in &t.cells[p] {
            row.push(match cell {
                Some(c) => format!("{}{}", if c.best { "*" } else { " " }, cell_text(c)),
                None => " n/a".to_string(),
            });
        }
        rows.push(row);
    }
    let cols = rows[0].len();
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().map(|r| r.get(c).map_or(0, |s| s.chars().count())).max().unwrap_or(0)).collect();

    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        let line: Vec<String> =
            row.iter().enumerate().map(|(c, s)| format!("{s}{}", " ".repeat(widths[c] - s.chars().count()))).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
        if i == 0 {
            let _ = writeln!(out, "{}", "-".repeat(widths.iter().sum::<usize>() + 2 * (cols - 1)));
        }
    }
    let _ = writeln!(out, "\n* best mean in row; † significantly different from {BASELINE} (rank-sum, alpha 0.05)");
    for r in &report.reversals {
        let _ = writeln!(
            out,
            "WARNING: {} exceeds {BASELINE} on {} by {:.4} (tolerance {REVERSAL_TOLERANCE})",
            r.algorithm, r.problem, r.margin
        );
    }
    if report.skipped > 0 {
        let _ = writeln!(out, "note: {} rows without a hypervolume were skipped", report.skipped);
    }
    out
}

/// Long-form CSV: `problem,algorithm,runs,mean,sd,p_value,significant,best`.
pub fn render_csv(report: &Report) -> String {
    let t = &report.table;
    let mut out = String::from("problem,algorithm,runs,mean,sd,p_value,significant,best\n");
    for (p, problem) in t.problems.iter().enumerate() {
        for (a, algorithm) in t.algorithms.iter().enumerate() {
            let Some(c) = &t.cells[p][a] else { continue };
            let sd = c.sd.map_or(String::new(), |s| s.to_string());
            let (pv, sig) = c
                .versus_baseline
                .as_ref()
                .map_or((String::new(), String::new()), |t| (t.p_value.to_string(), t.significant.to_string()));
            let _ = writeln!(out, "{problem},{algorithm},{},{},{sd},{pv},{sig},{}", c.runs, c.mean, c.best);
        }
    }
    out
}
