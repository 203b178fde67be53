use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Solver caps and search budgets.
///
/// Every exact solver refuses (with a capacity error) to run past its cap;
/// there is no silent fallback to approximation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Maximum arity for which a full truth table is materialized.
    pub dense_cap: usize,
    /// Maximum arity for exact block sensitivity.
    pub bs_cap: usize,
    /// Maximum arity for exact certificate complexity.
    pub cert_cap: usize,
    /// Maximum arity for exact decision-tree depth (also 0/1-depth).
    pub dt_cap: usize,
    /// Maximum arity for the exact AND-decision-tree solver.
    pub andtree_cap: usize,
    /// Maximum number of restrictions an exhaustive enumeration may visit.
    pub enumeration_budget: u64,
    /// Seed used when no explicit seed is given.
    pub default_seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            dense_cap: 24,
            bs_cap: 16,
            cert_cap: 20,
            dt_cap: 14,
            andtree_cap: 5,
            enumeration_budget: 50_000_000,
            default_seed: 0,
        }
    }
}

impl Config {
    /// Checks that every cap is at least 1.
    pub fn validate(&self) -> Result<()> {
        let caps = [
            ("dense_cap", self.dense_cap),
            ("bs_cap", self.bs_cap),
            ("cert_cap", self.cert_cap),
            ("dt_cap", self.dt_cap),
            ("andtree_cap", self.andtree_cap),
        ];
        for (name, value) in caps {
            if value == 0 {
                return Err(Error::Config(format!("{name} must be at least 1")));
            }
        }
        if self.enumeration_budget == 0 {
            return Err(Error::Config("enumeration_budget must be at least 1".into()));
        }
        Ok(())
    }
}
