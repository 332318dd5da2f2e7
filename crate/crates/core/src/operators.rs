//! Mating selection and variation operators.

use crate::error::{invalid, Error, Result};
use crate::pareto::BitString;
use rand::Rng;
use std::cmp::Ordering;

/// Default safety margin below the error threshold: rate `0.95 ln(k) / n`.
pub const DEFAULT_DELTA: f64 = 0.05;

/// `(1 - delta) ln(k) / n`, a margin `delta` below the error threshold of a
/// non-elitist population under `k`-tournament selection.
pub fn threshold_mutation_rate(k: usize, n: usize, delta: f64) -> Result<f64> {
    if k < 2 {
        return Err(invalid(format!("threshold mutation rate needs tournament size k >= 2, got {k}")));
    }
    if n < 1 {
        return Err(invalid("threshold mutation rate needs n >= 1"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("delta must lie in (0,1), got {delta}")));
    }
    Ok((1.0 - delta) * (k as f64).ln() / n as f64)
}

/// How the per-bit flip probability is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MutationConfig {
    /// An explicit rate.
    Fixed(f64),
    /// `1 / n`.
    Reciprocal,
    /// `(1 - delta) ln(k) / n` for the configured tournament size.
    Threshold { delta: f64 },
}

impl MutationConfig {
    pub fn rate(&self, n: usize, tournament_size: usize) -> Result<f64> {
        let p = match *self {
            MutationConfig::Fixed(p) => p,
            MutationConfig::Reciprocal => 1.0 / n as f64,
            MutationConfig::Threshold { delta } => threshold_mutation_rate(tournament_size, n, delta)?,
        };
        if !(0.0..1.0).contains(&p) {
            return Err(invalid(format!("mutation rate {p} outside [0,1)")));
        }
        Ok(p)
    }
}

/// Flips each bit independently with probability `p`.
pub fn bitflip_mutate<R: Rng + ?Sized>(genome: &BitString, p: f64, rng: &mut R) -> BitString {
    let mut child = genome.clone();
    bitflip_in_place(&mut child, p, rng);
    child
}

pub(crate) fn bitflip_in_place<R: Rng + ?Sized>(genome: &mut BitString, p: f64, rng: &mut R) -> usize {
    debug_assert!((0.0..=1.0).contains(&p));
    let mut flips = 0;
    for i in 0..genome.len() {
        if rng.gen::<f64>() < p {
            genome.flip(i);
            flips += 1;
        }
    }
    flips
}

/// Per position, the children swap the parents' bits with probability 1/2.
pub fn uniform_crossover<R: Rng + ?Sized>(a: &BitString, b: &BitString, rng: &mut R) -> Result<(BitString, BitString)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
    }
    let mut first = a.clone();
    let mut second = b.clone();
    for i in 0..a.len() {
        if rng.gen::<bool>() {
            first.set(i, b.get(i));
            second.set(i, a.get(i));
        }
    }
    Ok((first, second))
}

/// Draws `k` indices uniformly with replacement from `0..size` and returns
/// the best under `cmp` (`Less` = better). Ties go to a uniformly random
/// drawn candidate.
pub fn tournament<R, F>(size: usize, k: usize, rng: &mut R, mut cmp: F) -> usize
where
    R: Rng + ?Sized,
    F: FnMut(usize, usize) -> Ordering,
{
    assert!(size > 0 && k > 0, "tournament needs a non-empty population and k >= 1");
    let mut best = rng.gen_range(0..size);
    let mut tied = 1u32;
    for _ in 1..k {
        let challenger = rng.gen_range(0..size);
        match cmp(challenger, best) {
            Ordering::Less => {
                best = challenger;
                tied = 1;
            }
            Ordering::Equal => {
                tied += 1;
                if rng.gen_range(0..tied) == 0 {
                    best = challenger;
                }
            }
            Ordering::Greater => {}
        }
    }
    best
}

/// `k`-tournament on front rank (lower is better).
pub fn tournament_select<R: Rng + ?Sized>(ranks: &[usize], k: usize, rng: &mut R) -> usize {
    tournament(ranks.len(), k, rng, |a, b| ranks[a].cmp(&ranks[b]))
}
