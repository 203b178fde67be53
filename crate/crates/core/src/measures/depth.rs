//! Exact decision-tree depth and the 0-depth / 1-depth variants, by
//! memoized minimax over partial assignments.
//!
//! States are partial assignments encoded in ternary (free / fixed-0 /
//! fixed-1 per variable), memoized in a flat `3^arity` array.

use crate::config::Config;
use crate::error::Result;
use crate::function::StructuredFunction;
use crate::measures::{check_cap, materialize_for};
use crate::table::DenseTruthTable;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Charge {
    /// Every query costs 1: plain decision-tree depth.
    Every,
    /// Only 0-answered queries cost 1.
    ZeroAnswers,
    /// Only 1-answered queries cost 1.
    OneAnswers,
}

struct DepthSolver<'a> {
    table: &'a DenseTruthTable,
    arity: usize,
    pow3: Vec<usize>,
    memo: Vec<u8>,
    charge: Charge,
}

const UNKNOWN: u8 = u8::MAX;

impl<'a> DepthSolver<'a> {
    fn new(table: &'a DenseTruthTable, charge: Charge) -> Self {
        let arity = table.arity();
        let mut pow3 = vec![1usize; arity + 1];
        for i in 1..=arity {
            pow3[i] = pow3[i - 1] * 3;
        }
        DepthSolver {
            table,
            arity,
            memo: vec![UNKNOWN; pow3[arity]],
            pow3,
            charge,
        }
    }

    /// Is the subfunction on the subcube constant?
    fn constant_on(&self, fixed_mask: usize, fixed_vals: usize) -> bool {
        let free = !fixed_mask & ((1 << self.arity) - 1);
        let first = self.table.get(fixed_vals);
        // Enumerate subsets of the free mask.
        let mut sub = free;
        loop {
            if self.table.get(fixed_vals | sub) != first {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & free;
        }
    }

    fn solve(&mut self, fixed_mask: usize, fixed_vals: usize, state_id: usize) -> u8 {
        let cached = self.memo[state_id];
        if cached != UNKNOWN {
            return cached;
        }
        let result = if self.constant_on(fixed_mask, fixed_vals) {
            0
        } else {
            let mut best = u8::MAX;
            for i in 0..self.arity {
                let bit = 1usize << i;
                if fixed_mask & bit != 0 {
                    continue;
                }
                let d0 = self.solve(fixed_mask | bit, fixed_vals, state_id + self.pow3[i]);
                let d1 = self.solve(
                    fixed_mask | bit,
                    fixed_vals | bit,
                    state_id + 2 * self.pow3[i],
                );
                let cost = match self.charge {
                    Charge::Every => (d0 + 1).max(d1 + 1),
                    Charge::ZeroAnswers => (d0 + 1).max(d1),
                    Charge::OneAnswers => d0.max(d1 + 1),
                };
                best = best.min(cost);
            }
            best
        };
        self.memo[state_id] = result;
        result
    }
}

fn depth_with_charge(table: &DenseTruthTable, charge: Charge, cfg: &Config) -> Result<u64> {
    check_cap(table.arity(), cfg.dt_cap, "decision tree depth")?;
    let mut solver = DepthSolver::new(table, charge);
    Ok(solver.solve(0, 0, 0) as u64)
}

/// Exact deterministic query complexity.
pub fn dt_depth(f: &StructuredFunction, cfg: &Config) -> Result<u64> {
    let table = materialize_for(f, cfg.dt_cap, "decision tree depth", cfg)?;
    dt_depth_table(&table, cfg)
}

pub fn dt_depth_table(table: &DenseTruthTable, cfg: &Config) -> Result<u64> {
    depth_with_charge(table, Charge::Every, cfg)
}

/// Minimum over decision trees of the maximum number of 0-answered queries
/// on any root-to-leaf path.
pub fn zero_depth(f: &StructuredFunction, cfg: &Config) -> Result<u64> {
    let table = materialize_for(f, cfg.dt_cap, "decision tree depth", cfg)?;
    zero_depth_table(&table, cfg)
}

pub fn zero_depth_table(table: &DenseTruthTable, cfg: &Config) -> Result<u64> {
    depth_with_charge(table, Charge::ZeroAnswers, cfg)
}

/// 1-answer counterpart of [`zero_depth`].
pub fn one_depth(f: &StructuredFunction, cfg: &Config) -> Result<u64> {
    let table = materialize_for(f, cfg.dt_cap, "decision tree depth", cfg)?;
    one_depth_table(&table, cfg)
}

pub fn one_depth_table(table: &DenseTruthTable, cfg: &Config) -> Result<u64> {
    depth_with_charge(table, Charge::OneAnswers, cfg)
}
