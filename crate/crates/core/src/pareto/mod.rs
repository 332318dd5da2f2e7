//! Pareto dominance, non-dominated sorting and the unbounded archive.
//!
//! All objectives are maximised.

mod archive;
mod dominance;
mod dump;
mod sort;

pub use archive::Archive;
pub use dominance::{dominance, Dominance, ObjectiveVector};
pub use dump::{parse_dump, write_dump};
pub use sort::{nondominated_sort, nondominated_sort_2d, FrontPartition};

use std::fmt;

/// Fixed-length bit string genome.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![true; n])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        self.0[i] = bit;
    }

    pub fn flip(&mut self, i: usize) {
        self.0[i] = !self.0[i];
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn count_ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn complement(&self) -> Self {
        Self(self.0.iter().map(|b| !b).collect())
    }
}

impl std::str::FromStr for BitString {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(crate::error::invalid(format!("bad bit character {other:?}"))),
            })
            .collect::<crate::Result<Vec<_>>>()
            .map(Self)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

/// A genome together with its cached objective vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub genome: BitString,
    pub objectives: ObjectiveVector,
}

impl Solution {
    pub fn new(genome: BitString, objectives: ObjectiveVector) -> Self {
        Self { genome, objectives }
    }
}

impl AsRef<[f64]> for Solution {
    fn as_ref(&self) -> &[f64] {
        self.objectives.as_slice()
    }
}

pub type Population = Vec<Solution>;
