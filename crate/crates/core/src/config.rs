use serde::{Deserialize, Serialize};

use crate::poly::RootSearch;

/// Limits and seed shared by every enumeration and randomized routine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub seed: u64,
    /// Largest affine domain `q^d` enumerated.
    pub affine_cap: u64,
    /// Largest projective domain `(q^d - 1)/(q - 1)` enumerated.
    pub projective_cap: u64,
    /// Largest `|GL(n, q)|` scanned by brute-force group computations.
    pub group_budget: u64,
    /// Extension fields up to this size are searched for roots exhaustively.
    pub root_exhaustive_cap: u64,
    /// Allows seeded randomized splitting above `root_exhaustive_cap`.
    pub randomized: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            affine_cap: 1 << 24,
            projective_cap: 1 << 24,
            group_budget: 1 << 20,
            root_exhaustive_cap: 4096,
            randomized: true,
        }
    }
}

impl Config {
    pub fn with_seed(seed: u64) -> Self {
        Config {
            seed,
            ..Self::default()
        }
    }

    pub fn root_search(&self) -> RootSearch {
        RootSearch {
            exhaustive_cap: self.root_exhaustive_cap,
            seed: self.randomized.then_some(self.seed),
        }
    }
}
