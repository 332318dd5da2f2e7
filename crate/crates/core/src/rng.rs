//! Deterministic, splittable random streams.
//!
//! A [`RandomSource`] is identified by a root seed and a label path. The
//! ChaCha8 key is derived from the pair by a SplitMix64 fold, so a child
//! stream depends only on `(seed, path)` and never on how many values the
//! parent has already produced. ChaCha8 output is specified independently of
//! the host platform, which keeps experiments bit-reproducible.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn derive_key(seed: u64, path: &[u64]) -> [u8; 32] {
    let mut state = splitmix64(seed);
    for (depth, &label) in path.iter().enumerate() {
        let salt = splitmix64((depth as u64 + 1).wrapping_mul(GOLDEN_GAMMA));
        state = splitmix64(state ^ splitmix64(label ^ salt));
    }
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        state = splitmix64(state);
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    key
}

#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    path: Vec<u64>,
    stream: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self::with_path(seed, Vec::new())
    }

    fn with_path(seed: u64, path: Vec<u64>) -> Self {
        let stream = ChaCha8Rng::from_seed(derive_key(seed, &path));
        Self { seed, path, stream }
    }

    /// Derives a child stream labelled by `label`, relative to this source's
    /// own position in the label tree.
    pub fn fork(&self, label: &[u64]) -> Self {
        let mut path = self.path.clone();
        path.extend_from_slice(label);
        Self::with_path(self.seed, path)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn path(&self) -> &[u64] {
        &self.path
    }

    /// A single 64-bit digest of `(seed, path)`, suitable for reporting as a
    /// per-run seed.
    pub fn fingerprint(&self) -> u64 {
        let key = derive_key(self.seed, &self.path);
        u64::from_le_bytes(key[..8].try_into().expect("8-byte prefix"))
    }
}

impl RngCore for RandomSource {
    fn next_u32(&mut self) -> u32 {
        self.stream.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.stream.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.stream.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.stream.try_fill_bytes(dest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn draws(rng: &mut RandomSource, count: usize) -> Vec<u64> {
        (0..count).map(|_| rng.next_u64()).collect()
    }

    #[test]
    fn same_label_same_stream() {
        let master = RandomSource::new(7);
        let a = draws(&mut master.fork(&[0]), 1000);
        let b = draws(&mut master.fork(&[0]), 1000);
        assert_eq!(a, b);
    }

    #[test]
    fn distinct_labels_distinct_streams() {
        let master = RandomSource::new(7);
        let a = draws(&mut master.fork(&[0]), 1000);
        let b = draws(&mut master.fork(&[1]), 1000);
        assert!(a.iter().zip(&b).any(|(x, y)| x != y));
    }

    #[test]
    fn distinct_seeds_distinct_streams() {
        let a = draws(&mut RandomSource::new(7).fork(&[0]), 1000);
        let b = draws(&mut RandomSource::new(8).fork(&[0]), 1000);
        assert_ne!(a, b);
    }

    #[test]
    fn fork_ignores_parent_consumption() {
        let mut master = RandomSource::new(3);
        let before = draws(&mut master.fork(&[4, 2]), 16);
        let _ = draws(&mut master, 100);
        let after = draws(&mut master.fork(&[4, 2]), 16);
        assert_eq!(before, after);
    }

    #[test]
    fn nested_fork_equals_flat_fork() {
        let master = RandomSource::new(11);
        let nested = draws(&mut master.fork(&[1]).fork(&[2, 3]), 8);
        let flat = draws(&mut master.fork(&[1, 2, 3]), 8);
        assert_eq!(nested, flat);
    }

    #[test]
    fn label_order_matters() {
        let master = RandomSource::new(11);
        assert_ne!(draws(&mut master.fork(&[1, 2]), 4), draws(&mut master.fork(&[2, 1]), 4));
        assert_ne!(draws(&mut master.fork(&[0]), 4), draws(&mut master.fork(&[0, 0]), 4));
    }

    #[test]
    fn golden_sequence() {
        let mut rng = RandomSource::new(7).fork(&[0]);
        let got = draws(&mut rng, 3);
        assert_eq!(got, GOLDEN_7_0.to_vec());
    }

    // Pinned output of seed 7, label [0]. A change here breaks reproducibility
    // of every recorded experiment.
    const GOLDEN_7_0: [u64; 3] = [13129051263708193741, 9453388222904315910, 17563406404750296038];
}
