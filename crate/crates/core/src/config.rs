use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by every stage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Singular values below `rank * max(sigma_max, 1)` count as zero.
    pub rank: f64,
    /// Joint eigenvalue tuples closer than `cluster * max operator norm` merge.
    pub cluster: f64,
    /// Bracket closure, Killing invariance and commutation checks.
    pub bracket: f64,
    /// Relator product versus identity.
    pub relator: f64,
    /// Cocycle condition on the relator map.
    pub cocycle: f64,
    /// Group membership via defining relations.
    pub group: f64,
    /// Gram eigenvalues within `signature * norm` of zero are degenerate.
    pub signature: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: 1e-9,
            cluster: 1e-7,
            bracket: 1e-9,
            relator: 1e-8,
            cocycle: 1e-8,
            group: 1e-8,
            signature: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    pub tol: Tolerances,
    pub seed: u64,
    /// Largest realified ambient matrix size accepted by the constructors.
    pub dim_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tol: Tolerances::default(),
            seed: 0,
            dim_cap: 64,
        }
    }
}

impl Config {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    pub fn rng(&self) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(self.seed)
    }
}
