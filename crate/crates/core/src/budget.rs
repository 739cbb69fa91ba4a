//! Enumeration budgets.
//!
//! Exhaustive subset scans are bounded by a candidate budget so that a
//! malformed input fails predictably instead of running for hours. The
//! default cap of 2^20 candidates can be overridden per process through
//! `STONEWORK_MAX_SUBSETS` or per call through [`Budget::with_candidates`].

/// Environment variable consulted by [`Budget::from_env`].
pub const BUDGET_ENV_VAR: &str = "STONEWORK_MAX_SUBSETS";

pub const DEFAULT_CANDIDATES: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of candidate subsets an enumeration may visit, and
    /// also the maximum number of results it may return.
    pub max_candidates: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_env()
    }
}

impl Budget {
    pub fn with_candidates(max_candidates: u64) -> Self {
        Budget { max_candidates }
    }

    /// Default budget, honoring `STONEWORK_MAX_SUBSETS` when set to a
    /// positive integer.
    pub fn from_env() -> Self {
        let max_candidates = std::env::var(BUDGET_ENV_VAR)
            .ok()
            .and_then(|v| v.parse::<u64>().ok())
            .filter(|&v| v > 0)
            .unwrap_or(DEFAULT_CANDIDATES);
        Budget { max_candidates }
    }

    /// Whether `2^exponent` candidates fit in the budget.
    pub fn allows_power_of_two(&self, exponent: usize) -> bool {
        exponent < 64 && (1u64 << exponent) <= self.max_candidates
    }
}
