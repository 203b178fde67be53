//! Exact certificate complexity.
//!
//! Minimum size is found by a violating-witness branch and bound: if the
//! current position set does not yet force the function constant, some
//! counterexample input exists, and any certificate must include a position
//! where that counterexample differs from the base point. The reported
//! witness is the lexicographically first set of the minimum size.

use crate::config::Config;
use crate::error::Result;
use crate::function::StructuredFunction;
use crate::measures::{check_cap, materialize_for, ValueTag};
use crate::table::DenseTruthTable;

/// First input disagreeing with `f(at)` inside the subcube fixing `set`,
/// in index order.
fn violating_input(table: &DenseTruthTable, at: usize, set: usize) -> Option<usize> {
    let v = table.get(at);
    let fixed = at & set;
    (0..table.len()).find(|&e| e & set == fixed && table.get(e) != v)
}

fn min_size_rec(table: &DenseTruthTable, at: usize, set: usize, size: u64, best: &mut u64) {
    if size >= *best {
        return;
    }
    match violating_input(table, at, set) {
        None => *best = size,
        Some(witness) => {
            let mut candidates = (witness ^ at) & !set;
            while candidates != 0 {
                let bit = candidates & candidates.wrapping_neg();
                min_size_rec(table, at, set | bit, size + 1, best);
                candidates ^= bit;
            }
        }
    }
}

fn min_certificate_size(table: &DenseTruthTable, at: usize) -> u64 {
    // Fixing every position always certifies, so the arity is a valid
    // initial bound only as size + 1; start one above and search down.
    let mut best = table.arity() as u64 + 1;
    min_size_rec(table, at, 0, 0, &mut best);
    debug_assert!(best <= table.arity() as u64);
    best
}

/// Lexicographically first certificate of the given size, as a sorted
/// 0-based position list.
fn lex_witness(table: &DenseTruthTable, at: usize, size: u64) -> Vec<usize> {
    let arity = table.arity();
    let size = size as usize;
    if size == 0 {
        return Vec::new();
    }
    let mut combo: Vec<usize> = (0..size).collect();
    loop {
        let set: usize = combo.iter().fold(0, |m, &i| m | (1 << i));
        if violating_input(table, at, set).is_none() {
            return combo;
        }
        // Next combination, lexicographic.
        let mut i = size;
        loop {
            assert!(i > 0, "no certificate of size {size} exists");
            i -= 1;
            if combo[i] < arity - (size - i) {
                combo[i] += 1;
                for j in i + 1..size {
                    combo[j] = combo[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Exact certificate complexity at a point with the lexicographically first
/// minimum witness (0-based positions).
pub fn certificate_at_table(
    table: &DenseTruthTable,
    at: usize,
    cfg: &Config,
) -> Result<(u64, Vec<usize>)> {
    check_cap(table.arity(), cfg.cert_cap, "certificate complexity")?;
    let size = min_certificate_size(table, at);
    let witness = lex_witness(table, at, size);
    Ok((size, witness))
}

pub fn certificate_at(
    f: &StructuredFunction,
    x: &[bool],
    cfg: &Config,
) -> Result<(u64, Vec<usize>)> {
    let table = materialize_for(f, cfg.cert_cap, "certificate complexity", cfg)?;
    certificate_at_table(&table, crate::table::bits_to_index(x), cfg)
}

/// Maximum certificate complexity over the tagged input set.
pub fn certificate(f: &StructuredFunction, tag: ValueTag, cfg: &Config) -> Result<u64> {
    let table = materialize_for(f, cfg.cert_cap, "certificate complexity", cfg)?;
    certificate_of_table(&table, tag, cfg)
}

pub fn certificate_of_table(table: &DenseTruthTable, tag: ValueTag, cfg: &Config) -> Result<u64> {
    check_cap(table.arity(), cfg.cert_cap, "certificate complexity")?;
    let mut max = 0;
    for e in 0..table.len() {
        if tag.admits(table.get(e)) {
            max = max.max(min_certificate_size(table, e));
        }
    }
    Ok(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{modified_rubinstein, rubinstein_base};

    #[test]
    fn rubinstein_certificates() {
        let cfg = Config::default();
        let g = rubinstein_base(2, 2);
        // C1(g) = k^2 = 4, C0(g) = max(k, 2) = 2.
        assert_eq!(certificate(&g, ValueTag::OnOnes, &cfg).unwrap(), 4);
        assert_eq!(certificate(&g, ValueTag::OnZeros, &cfg).unwrap(), 2);
    }

    #[test]
    fn modified_rubinstein_origin_certificate() {
        let cfg = Config::default();
        let f = modified_rubinstein(2, 2, 2);
        let (size, witness) = certificate_at(&f, &[false; 8], &cfg).unwrap();
        assert_eq!(size, 4);
        // Witness re-verified by subcube scan.
        let table = f.materialize(24).unwrap();
        let set: usize = witness.iter().fold(0, |m, &i| m | (1 << i));
        assert!(violating_input(&table, 0, set).is_none());
    }

    #[test]
    fn constant_needs_no_certificate() {
        let cfg = Config::default();
        let c = StructuredFunction::Dense(DenseTruthTable::constant(3, false));
        let (size, witness) = certificate_at(&c, &[false; 3], &cfg).unwrap();
        assert_eq!(size, 0);
        assert!(witness.is_empty());
        assert_eq!(certificate(&c, ValueTag::All, &cfg).unwrap(), 0);
    }

    #[test]
    fn witness_is_lexicographically_first() {
        // OR on 3 vars at input 100: certificates of size 1 are {x3}? No:
        // at x = (false, false, true), f = 1; fixing x3 = 1 certifies.
        let or3 = StructuredFunction::Dense(DenseTruthTable::from_fn(3, |e| e != 0));
        let cfg = Config::default();
        let (size, witness) = certificate_at(&or3, &[false, false, true], &cfg).unwrap();
        assert_eq!(size, 1);
        assert_eq!(witness, vec![2]);
        // At the origin every variable must be fixed.
        let (size, witness) = certificate_at(&or3, &[false; 3], &cfg).unwrap();
        assert_eq!(size, 3);
        assert_eq!(witness, vec![0, 1, 2]);
    }

    #[test]
    fn brute_force_cross_check() {
        // Independent oracle: plain subsets-by-size search on random tables.
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let cfg = Config::default();
        for _ in 0..20 {
            let table = DenseTruthTable::random(4, &mut rng);
            for at in 0..16 {
                let (fast, _) = certificate_at_table(&table, at, &cfg).unwrap();
                let brute = (0usize..16)
                    .filter(|set| violating_input(&table, at, *set).is_none())
                    .map(|set| set.count_ones() as u64)
                    .min()
                    .unwrap();
                assert_eq!(fast, brute);
            }
        }
    }
}
