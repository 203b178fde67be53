//! Exact AND-decision-tree depth.
//!
//! The solver state is the set of inputs still consistent with the answers
//! so far, as a bitmask over table indices. A 1-answer to a conjunction
//! query intersects the state with the all-ones subcube on the queried set;
//! a 0-answer with its complement. States are memoized; queries whose answer
//! is forced give no information and are skipped.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::function::StructuredFunction;
use crate::measures::{check_cap, materialize_for, zero_depth};
use crate::table::DenseTruthTable;

/// A decision tree whose internal nodes query conjunctions of input bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AndDecisionTree {
    pub root: AndNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AndNode {
    Leaf(bool),
    Query {
        /// 0-based variable indices of the conjunction, ascending.
        vars: Vec<usize>,
        if_zero: Box<AndNode>,
        if_one: Box<AndNode>,
    },
}

impl AndDecisionTree {
    pub fn depth(&self) -> u64 {
        fn rec(node: &AndNode) -> u64 {
            match node {
                AndNode::Leaf(_) => 0,
                AndNode::Query {
                    if_zero, if_one, ..
                } => 1 + rec(if_zero).max(rec(if_one)),
            }
        }
        rec(&self.root)
    }
}

/// Replays the tree on every input and checks the leaf outputs against the
/// table.
pub fn verify_and_tree(table: &DenseTruthTable, tree: &AndDecisionTree) -> bool {
    for e in 0..table.len() {
        let mut node = &tree.root;
        loop {
            match node {
                AndNode::Leaf(value) => {
                    if *value != table.get(e) {
                        return false;
                    }
                    break;
                }
                AndNode::Query {
                    vars,
                    if_zero,
                    if_one,
                } => {
                    let answer = vars.iter().all(|&i| e >> i & 1 == 1);
                    node = if answer { if_one } else { if_zero };
                }
            }
        }
    }
    true
}

enum Memo {
    Flat(Vec<u8>),
    Map(HashMap<u64, u8>),
}

impl Memo {
    fn get(&self, state: u64) -> Option<u8> {
        match self {
            Memo::Flat(v) => {
                let d = v[state as usize];
                (d != u8::MAX).then_some(d)
            }
            Memo::Map(m) => m.get(&state).copied(),
        }
    }

    fn put(&mut self, state: u64, depth: u8) {
        match self {
            Memo::Flat(v) => v[state as usize] = depth,
            Memo::Map(m) => {
                m.insert(state, depth);
            }
        }
    }
}

struct AndSolver {
    accept: u64,
    ones_mask: Vec<u64>,
    memo: Memo,
}

impl AndSolver {
    fn new(table: &DenseTruthTable) -> Self {
        let arity = table.arity();
        let points = 1usize << arity;
        let mut accept = 0u64;
        for e in 0..points {
            if table.get(e) {
                accept |= 1 << e;
            }
        }
        // ones_mask[s]: inputs where all variables of the set s are 1.
        let ones_mask = (0..(1usize << arity))
            .map(|s| {
                let mut mask = 0u64;
                for e in 0..points {
                    if e & s == s {
                        mask |= 1 << e;
                    }
                }
                mask
            })
            .collect();
        let memo = if arity <= 4 {
            Memo::Flat(vec![u8::MAX; 1usize << points])
        } else {
            Memo::Map(HashMap::new())
        };
        AndSolver {
            accept,
            ones_mask,
            memo,
        }
    }

    fn constant_output(&self, state: u64) -> Option<bool> {
        let ones = state & self.accept;
        if ones == 0 {
            Some(false)
        } else if ones == state {
            Some(true)
        } else {
            None
        }
    }

    fn depth(&mut self, state: u64) -> u8 {
        if self.constant_output(state).is_some() {
            return 0;
        }
        if let Some(d) = self.memo.get(state) {
            return d;
        }
        let mut best = u8::MAX;
        for s in 1..self.ones_mask.len() {
            let s1 = state & self.ones_mask[s];
            if s1 == 0 || s1 == state {
                continue;
            }
            let s0 = state & !self.ones_mask[s];
            let d = 1 + self.depth(s1).max(self.depth(s0));
            best = best.min(d);
        }
        self.memo.put(state, best);
        best
    }

    fn build_tree(&mut self, state: u64, arity: usize) -> AndNode {
        if let Some(value) = self.constant_output(state) {
            return AndNode::Leaf(value);
        }
        let target = self.depth(state);
        for s in 1..self.ones_mask.len() {
            let s1 = state & self.ones_mask[s];
            if s1 == 0 || s1 == state {
                continue;
            }
            let s0 = state & !self.ones_mask[s];
            if 1 + self.depth(s1).max(self.depth(s0)) == target {
                let vars = (0..arity).filter(|i| s >> i & 1 == 1).collect();
                return AndNode::Query {
                    vars,
                    if_zero: Box::new(self.build_tree(s0, arity)),
                    if_one: Box::new(self.build_tree(s1, arity)),
                };
            }
        }
        unreachable!("some query achieves the memoized depth")
    }
}

/// Exact AND-decision-tree depth of a table, with an optimal witness tree.
pub fn and_dt_depth_exact_table(
    table: &DenseTruthTable,
    cfg: &Config,
) -> Result<(u64, AndDecisionTree)> {
    check_cap(table.arity(), cfg.andtree_cap, "AND-decision-tree depth")?;
    if table.arity() > 6 {
        return Err(Error::Capacity {
            what: "AND-decision-tree state mask",
            required: table.arity() as u128,
            cap: 6,
        });
    }
    let full = if table.len() == 64 {
        u64::MAX
    } else {
        (1u64 << table.len()) - 1
    };
    let mut solver = AndSolver::new(table);
    let depth = solver.depth(full) as u64;
    let tree = AndDecisionTree {
        root: solver.build_tree(full, table.arity()),
    };
    debug_assert!(verify_and_tree(table, &tree));
    debug_assert_eq!(tree.depth(), depth);
    Ok((depth, tree))
}

pub fn and_dt_depth_exact(
    f: &StructuredFunction,
    cfg: &Config,
) -> Result<(u64, AndDecisionTree)> {
    let table = materialize_for(f, cfg.andtree_cap, "AND-decision-tree depth", cfg)?;
    and_dt_depth_exact_table(&table, cfg)
}

fn ceil_log2(m: u64) -> u64 {
    if m <= 1 {
        0
    } else {
        (64 - (m - 1).leading_zeros()) as u64
    }
}

/// The sandwich bounds: `zero_depth(f) <= and_depth(f) <=
/// zero_depth(f) * ceil(log2(arity + 1))`.
pub fn and_dt_depth_bounds(f: &StructuredFunction, cfg: &Config) -> Result<(u64, u64)> {
    let zd = zero_depth(f, cfg)?;
    Ok((zd, zd * ceil_log2(f.arity() as u64 + 1)))
}

/// OR-decision-tree depth via the dual reduction: an OR query equals the
/// negated AND query on complemented inputs, so the OR depth of `f` is the
/// AND depth of the input- and output-complemented function.
pub fn or_dt_depth_exact_table(table: &DenseTruthTable, cfg: &Config) -> Result<u64> {
    let arity = table.arity();
    let mask = (1usize << arity) - 1;
    let dual = DenseTruthTable::from_fn(arity, |e| !table.get(!e & mask));
    and_dt_depth_exact_table(&dual, cfg).map(|(d, _)| d)
}

pub fn or_dt_depth_exact(f: &StructuredFunction, cfg: &Config) -> Result<u64> {
    let table = materialize_for(f, cfg.andtree_cap, "OR-decision-tree depth", cfg)?;
    or_dt_depth_exact_table(&table, cfg)
}
