use serde::{Deserialize, Serialize};

/// Knobs shared by every randomized check. Identical configs give identical
/// verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub seed: u64,
    /// Random points per rank estimate and candidate Lefschetz elements.
    pub trials: usize,
    /// Sample coordinates lie in `[-sample_bound, sample_bound]`.
    pub sample_bound: u64,
    /// Largest matrix size for symbolic determinants and ranks.
    pub symbolic_cap: usize,
    /// Try `L = X_1 + ... + X_r` before random candidates.
    pub try_all_ones: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            seed: 0,
            trials: 12,
            sample_bound: 1_000_000,
            symbolic_cap: 12,
            try_all_ones: true,
        }
    }
}

impl CheckConfig {
    pub fn with_seed(seed: u64) -> Self {
        CheckConfig {
            seed,
            ..Self::default()
        }
    }

    /// Deterministic RNG for one operation; `salt` separates call sites.
    pub fn rng(&self, salt: u64) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(salt);
        r
    }
}
