//! Exact block sensitivity.
//!
//! Algorithm: enumerate the minimal sensitive blocks at the base point, then
//! find an exact maximum disjoint packing by branch and bound. Every
//! sensitive block contains a minimal one, so the optimum is achieved over
//! minimal blocks.

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::Result;
use crate::function::StructuredFunction;
use crate::measures::{check_cap, materialize_for, ValueTag};
use crate::table::DenseTruthTable;

/// A witness for a block sensitivity value: pairwise disjoint blocks, each
/// sensitive at the base point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockFamily {
    /// Table index of the base point.
    pub base_index: usize,
    /// Blocks as sorted 0-based variable index sets.
    pub blocks: Vec<Vec<usize>>,
}

impl BlockFamily {
    /// Re-checks disjointness and sensitivity of every block.
    pub fn verify(&self, table: &DenseTruthTable) -> bool {
        let v = table.get(self.base_index);
        let mut used = 0usize;
        for block in &self.blocks {
            if block.is_empty() {
                return false;
            }
            let mask: usize = block.iter().fold(0, |m, &i| m | (1 << i));
            if mask & used != 0 || mask.count_ones() as usize != block.len() {
                return false;
            }
            used |= mask;
            if table.get(self.base_index ^ mask) == v {
                return false;
            }
        }
        true
    }
}

/// Minimal sensitive blocks at `at`, as bitmasks in ascending order.
fn minimal_sensitive_blocks(table: &DenseTruthTable, at: usize) -> Vec<usize> {
    let arity = table.arity();
    let size = 1usize << arity;
    let v = table.get(at);
    let mut sensitive = vec![false; size];
    for block in 1..size {
        sensitive[block] = table.get(at ^ block) != v;
    }
    // reach[b]: some nonempty subset of b is sensitive.
    let mut reach = vec![false; size];
    let mut minimal = Vec::new();
    for block in 1..size {
        let mut subset_hit = false;
        let mut rest = block;
        while rest != 0 {
            let bit = rest & rest.wrapping_neg();
            if reach[block ^ bit] {
                subset_hit = true;
                break;
            }
            rest ^= bit;
        }
        reach[block] = subset_hit || sensitive[block];
        if sensitive[block] && !subset_hit {
            minimal.push(block);
        }
    }
    minimal
}

/// Exact maximum disjoint packing with the lexicographically first optimal
/// selection (in ascending-mask order).
fn max_disjoint_packing(blocks: &[usize]) -> (u64, Vec<usize>) {
    fn dfs(
        blocks: &[usize],
        index: usize,
        used: usize,
        chosen: &mut Vec<usize>,
        best: &mut (u64, Vec<usize>),
    ) {
        if chosen.len() as u64 > best.0 {
            *best = (chosen.len() as u64, chosen.clone());
        }
        if index >= blocks.len() {
            return;
        }
        // Bound: even taking everything left cannot beat the best.
        if chosen.len() as u64 + (blocks.len() - index) as u64 <= best.0 {
            return;
        }
        for i in index..blocks.len() {
            if blocks[i] & used == 0 {
                chosen.push(blocks[i]);
                dfs(blocks, i + 1, used | blocks[i], chosen, best);
                chosen.pop();
                if chosen.len() as u64 + (blocks.len() - i - 1) as u64 <= best.0 {
                    break;
                }
            }
        }
    }
    let mut best = (0, Vec::new());
    dfs(blocks, 0, 0, &mut Vec::new(), &mut best);
    best
}

pub fn block_sensitivity_at_table(
    table: &DenseTruthTable,
    at: usize,
    cfg: &Config,
) -> Result<(u64, BlockFamily)> {
    check_cap(table.arity(), cfg.bs_cap, "block sensitivity")?;
    let minimal = minimal_sensitive_blocks(table, at);
    let (value, chosen) = max_disjoint_packing(&minimal);
    let blocks = chosen
        .iter()
        .map(|&mask| (0..table.arity()).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    Ok((
        value,
        BlockFamily {
            base_index: at,
            blocks,
        },
    ))
}

fn block_sensitivity_value(table: &DenseTruthTable, at: usize) -> u64 {
    let minimal = minimal_sensitive_blocks(table, at);
    max_disjoint_packing(&minimal).0
}

/// Exact block sensitivity at a point, with a minimal-block witness.
pub fn block_sensitivity_at(
    f: &StructuredFunction,
    x: &[bool],
    cfg: &Config,
) -> Result<(u64, BlockFamily)> {
    let table = materialize_for(f, cfg.bs_cap, "block sensitivity", cfg)?;
    block_sensitivity_at_table(&table, crate::table::bits_to_index(x), cfg)
}

/// Maximum block sensitivity over the tagged input set.
pub fn block_sensitivity(f: &StructuredFunction, tag: ValueTag, cfg: &Config) -> Result<u64> {
    let table = materialize_for(f, cfg.bs_cap, "block sensitivity", cfg)?;
    block_sensitivity_of_table(&table, tag, cfg)
}

pub fn block_sensitivity_of_table(
    table: &DenseTruthTable,
    tag: ValueTag,
    cfg: &Config,
) -> Result<u64> {
    check_cap(table.arity(), cfg.bs_cap, "block sensitivity")?;
    let mut max = 0;
    for e in 0..table.len() {
        if tag.admits(table.get(e)) {
            max = max.max(block_sensitivity_value(table, e));
        }
    }
    Ok(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{modified_rubinstein, rubinstein_base};

    #[test]
    fn rubinstein_origin_blocks() {
        let cfg = Config::default();
        let g = rubinstein_base(2, 2);
        let (value, witness) = block_sensitivity_at(&g, &[false; 4], &cfg).unwrap();
        assert_eq!(value, 2);
        assert_eq!(witness.blocks, vec![vec![0, 1], vec![2, 3]]);
        assert!(witness.verify(&g.materialize(24).unwrap()));
    }

    #[test]
    fn modified_rubinstein_origin() {
        let cfg = Config::default();
        let f = modified_rubinstein(2, 2, 2);
        let (value, witness) = block_sensitivity_at(&f, &[false; 8], &cfg).unwrap();
        assert_eq!(value, 4);
        assert!(witness.verify(&f.materialize(24).unwrap()));
    }

    #[test]
    fn constant_has_no_sensitive_blocks() {
        let cfg = Config::default();
        let c = StructuredFunction::Dense(DenseTruthTable::constant(4, true));
        for e in 0..16 {
            let bits = crate::table::index_to_bits(e, 4);
            assert_eq!(block_sensitivity_at(&c, &bits, &cfg).unwrap().0, 0);
        }
        assert_eq!(block_sensitivity(&c, ValueTag::All, &cfg).unwrap(), 0);
    }

    #[test]
    fn bs_zero_of_base_is_num_blocks() {
        let cfg = Config::default();
        assert_eq!(
            block_sensitivity(&rubinstein_base(2, 2), ValueTag::OnZeros, &cfg).unwrap(),
            2
        );
        assert_eq!(
            block_sensitivity(&rubinstein_base(2, 3), ValueTag::OnZeros, &cfg).unwrap(),
            3
        );
    }

    #[test]
    fn packing_is_exact_on_overlapping_blocks() {
        // Pairwise overlapping chain: {0,1}, {1,2}, {2,3}: optimum picks the
        // two ends.
        let (value, chosen) = max_disjoint_packing(&[0b0011, 0b0110, 0b1100]);
        assert_eq!(value, 2);
        assert_eq!(chosen, vec![0b0011, 0b1100]);
    }

    #[test]
    fn cap_is_enforced() {
        let cfg = Config {
            bs_cap: 3,
            ..Config::default()
        };
        let g = rubinstein_base(2, 2);
        assert!(block_sensitivity(&g, ValueTag::All, &cfg).is_err());
    }
}
