use serde::{Deserialize, Serialize};

/// Tolerances shared by every approximate predicate, plus the seed used by
/// the sampling oracles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Step of the central differences used by the frame checks.
    pub fd_step: f64,
    pub rng_seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            fd_step: 1e-5,
            rng_seed: 0,
        }
    }
}

impl ToleranceConfig {
    /// Same absolute and relative tolerance, other fields at their defaults.
    pub fn uniform(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            ..Self::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn is_valid(&self) -> bool {
        self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.fd_step > 0.0
    }
}
