//! Adaptive RF-chain activation.
//!
//! All schemes here decide how many RF chains each AP turns on, subject to a
//! network-wide chain budget: every per-AP count stays within the installed
//! hardware and the counts sum to `ap_count * avg_rf_chains`. The searches
//! (tabu, fast) walk this feasible set guided by achieved rates; the
//! statistics-based schemes (singular-value, path-loss) allocate directly
//! from channel state; the exhaustive oracle enumerates the whole set.

mod aps;
mod exhaustive;
mod fast;
mod neighbors;
mod pl;
mod sv;
mod tabu;

pub use aps::aps_activation;
pub use exhaustive::{exhaustive_arfa, EXHAUSTIVE_LIMIT};
pub use fast::fs_carfa;
pub use neighbors::neighbor_set;
pub use pl::pl_scarfa;
pub use sv::{allocate_by_singular_values, sv_scarfa};
pub use tabu::ts_carfa;

use crate::error::{Error, Result};

/// Per-AP RF-chain activation counts, validated against the feasible set:
/// each count is at most `max_per_ap` and the counts sum to `budget`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActivationVector {
    counts: Vec<usize>,
}

impl ActivationVector {
    /// Validates `counts` against the feasible set and wraps it.
    pub fn new(counts: Vec<usize>, max_per_ap: usize, budget: usize) -> Result<Self> {
        if let Some(&bad) = counts.iter().find(|&&n| n > max_per_ap) {
            return Err(Error::InvalidConfig(format!(
                "activation count {bad} exceeds the per-AP limit {max_per_ap}"
            )));
        }
        let total: usize = counts.iter().sum();
        if total != budget {
            return Err(Error::InvalidConfig(format!(
                "activation counts sum to {total}, budget is {budget}"
            )));
        }
        Ok(Self { counts })
    }

    /// The uniform allocation `n_l = nbar` for all APs.
    pub fn uniform(ap_count: usize, nbar: usize) -> Self {
        Self { counts: vec![nbar; ap_count] }
    }

    /// Wraps counts whose feasibility the caller has already established
    /// structurally (e.g. a paired increment/decrement of a feasible vector).
    pub(crate) fn from_checked(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Number of APs with at least one chain on.
    pub fn active_ap_count(&self) -> usize {
        self.counts.iter().filter(|&&n| n > 0).count()
    }
}

/// Bookkeeping from a rate-driven search.
#[derive(Debug, Clone)]
pub struct SearchTrace {
    /// Distinct activation vectors taken through a full combiner-plus-rate
    /// evaluation. Repeated visits served from the search's memory don't
    /// count.
    pub candidates_examined: usize,
    /// Best rate known after each evaluation round, starting from the
    /// initial allocation; non-decreasing.
    pub rate_history: Vec<f64>,
}

/// Number of activation vectors in the feasible set: length-`ap_count`
/// integer vectors bounded by `max_per_ap` that sum to `budget`.
pub fn feasible_set_size(ap_count: usize, max_per_ap: usize, budget: usize) -> u128 {
    // Classic bounded-composition DP; u128 keeps counts exact far beyond
    // the sizes the exhaustive guard admits.
    let mut ways = vec![0u128; budget + 1];
    ways[0] = 1;
    for _ in 0..ap_count {
        let mut next = vec![0u128; budget + 1];
        for (total, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for add in 0..=max_per_ap.min(budget - total) {
                next[total + add] += w;
            }
        }
        ways = next;
    }
    ways[budget]
}
