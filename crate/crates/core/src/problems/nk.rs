use super::{Evaluation, Problem};
use crate::error::{invalid, Result};
use crate::pareto::{BitString, ObjectiveVector};
use rand::seq::index;
use rand::Rng;

/// Largest epistasis degree accepted; tables hold `2^(k+1)` entries per bit.
pub const MAX_K: usize = 24;

/// Multi-objective NK-landscape with random (non-adjacent) neighbourhoods.
///
/// The contribution of bit `j` to objective `i` is
/// `tables[i][j][idx]`, where `idx` reads bit `j` as the most significant
/// bit followed by the neighbour bits in stored order.
#[derive(Debug, Clone, PartialEq)]
pub struct NkInstance {
    k: usize,
    neighbors: Vec<Vec<Vec<usize>>>,
    tables: Vec<Vec<Vec<f64>>>,
}

impl NkInstance {
    pub fn new(k: usize, neighbors: Vec<Vec<Vec<usize>>>, tables: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let m = neighbors.len();
        if m == 0 || tables.len() != m {
            return Err(invalid("NK needs matching neighbour and table sets per objective"));
        }
        let n = neighbors[0].len();
        if n == 0 {
            return Err(invalid("NK needs at least one bit"));
        }
        if k >= n {
            return Err(invalid(format!("NK needs k <= n-1, got n={n} k={k}")));
        }
        if k > MAX_K {
            return Err(invalid(format!("NK epistasis degree {k} exceeds the supported maximum {MAX_K}")));
        }
        let width = 1usize << (k + 1);
        for obj in 0..m {
            if neighbors[obj].len() != n || tables[obj].len() != n {
                return Err(invalid(format!("objective {obj} does not cover {n} bits")));
            }
            for j in 0..n {
                let nb = &neighbors[obj][j];
                if nb.len() != k {
                    return Err(invalid(format!(
                        "bit {j} of objective {obj} has {} neighbours, expected {k}",
                        nb.len()
                    )));
                }
                let mut seen = vec![false; n];
                seen[j] = true;
                for &x in nb {
                    if x >= n || seen[x] {
                        return Err(invalid(format!("bit {j} of objective {obj} has a bad neighbour {x}")));
                    }
                    seen[x] = true;
                }
                let table = &tables[obj][j];
                if table.len() != width {
                    return Err(invalid(format!(
                        "bit {j} of objective {obj} has {} entries, expected {width}",
                        table.len()
                    )));
                }
                if table.iter().any(|v| !(0.0..=1.0).contains(v)) {
                    return Err(invalid(format!("bit {j} of objective {obj} has an entry outside [0,1]")));
                }
            }
        }
        Ok(Self { k, neighbors, tables })
    }

    /// Draws, per objective and per bit, `k` distinct neighbours from the
    /// other `n - 1` bits followed by `2^(k+1)` uniform table entries.
    pub fn generate<R: Rng + ?Sized>(n: usize, k: usize, m: usize, rng: &mut R) -> Result<Self> {
        if n < 1 || m < 2 || k >= n {
            return Err(invalid(format!("NK generation needs n >= 1, 0 <= k <= n-1, m >= 2; got n={n} k={k} m={m}")));
        }
        if k > MAX_K {
            return Err(invalid(format!("NK epistasis degree {k} exceeds the supported maximum {MAX_K}")));
        }
        let width = 1usize << (k + 1);
        let mut neighbors = Vec::with_capacity(m);
        let mut tables = Vec::with_capacity(m);
        for _ in 0..m {
            let mut obj_neighbors = Vec::with_capacity(n);
            let mut obj_tables = Vec::with_capacity(n);
            for j in 0..n {
                let picked: Vec<usize> =
                    index::sample(rng, n - 1, k).into_iter().map(|x| if x >= j { x + 1 } else { x }).collect();
                obj_neighbors.push(picked);
                obj_tables.push((0..width).map(|_| rng.gen::<f64>()).collect());
            }
            neighbors.push(obj_neighbors);
            tables.push(obj_tables);
        }
        Self::new(k, neighbors, tables)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn neighbors(&self) -> &[Vec<Vec<usize>>] {
        &self.neighbors
    }

    pub fn tables(&self) -> &[Vec<Vec<f64>>] {
        &self.tables
    }
}

impl Problem for NkInstance {
    fn num_bits(&self) -> usize {
        self.neighbors[0].len()
    }

    fn num_objectives(&self) -> usize {
        self.neighbors.len()
    }

    fn evaluate(&self, genome: &BitString) -> Evaluation {
        let n = self.num_bits();
        assert_eq!(genome.len(), n, "genome length");
        let bits = genome.bits();
        let objectives = self
            .neighbors
            .iter()
            .zip(&self.tables)
            .map(|(obj_nb, obj_tables)| {
                let total: f64 = obj_nb
                    .iter()
                    .zip(obj_tables)
                    .enumerate()
                    .map(|(j, (nb, table))| {
                        let idx = nb.iter().fold(bits[j] as usize, |acc, &x| (acc << 1) | bits[x] as usize);
                        table[idx]
                    })
                    .sum();
                total / n as f64
            })
            .collect();
        Evaluation { objectives: ObjectiveVector::new_unchecked(objectives), feasible: true, repaired_genome: None }
    }
}
