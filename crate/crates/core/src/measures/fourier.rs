//! Fourier sparsity and real multilinear degree, both in exact integer
//! arithmetic.
//!
//! Sparsity is taken over the +/-1-valued version of the function
//! (0 -> +1, 1 -> -1); the Walsh-Hadamard coefficients are kept scaled by
//! `2^arity` so no rounding can occur.

use crate::config::Config;
use crate::error::Result;
use crate::function::StructuredFunction;
use crate::measures::check_cap;
use crate::table::DenseTruthTable;

/// In-place Walsh-Hadamard butterfly.
fn wht(values: &mut [i32]) {
    let n = values.len();
    let mut h = 1;
    while h < n {
        for start in (0..n).step_by(2 * h) {
            for i in start..start + h {
                let a = values[i];
                let b = values[i + h];
                values[i] = a + b;
                values[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Number of nonzero Walsh-Hadamard coefficients of the +/-1-valued
/// function.
pub fn fourier_sparsity_table(table: &DenseTruthTable) -> u64 {
    let mut values: Vec<i32> = (0..table.len())
        .map(|e| if table.get(e) { -1 } else { 1 })
        .collect();
    wht(&mut values);
    values.iter().filter(|&&c| c != 0).count() as u64
}

pub fn fourier_sparsity(f: &StructuredFunction, cfg: &Config) -> Result<u64> {
    check_cap(f.arity(), cfg.dense_cap, "Fourier sparsity")?;
    Ok(fourier_sparsity_table(&f.materialize(cfg.dense_cap)?))
}

/// Degree of the unique multilinear real polynomial, via the integer Moebius
/// transform on the 0/1 values.
pub fn degree_table(table: &DenseTruthTable) -> u64 {
    let arity = table.arity();
    let mut coeffs: Vec<i64> = (0..table.len())
        .map(|e| table.get(e) as i64)
        .collect();
    for i in 0..arity {
        let bit = 1usize << i;
        for e in 0..table.len() {
            if e & bit != 0 {
                coeffs[e] -= coeffs[e ^ bit];
            }
        }
    }
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(e, _)| e.count_ones() as u64)
        .max()
        .unwrap_or(0)
}

pub fn degree(f: &StructuredFunction, cfg: &Config) -> Result<u64> {
    check_cap(f.arity(), cfg.dense_cap, "degree")?;
    Ok(degree_table(&f.materialize(cfg.dense_cap)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::tribes;

    fn parity(n: usize) -> DenseTruthTable {
        DenseTruthTable::from_fn(n, |e| e.count_ones() % 2 == 1)
    }

    #[test]
    fn parity_has_single_character() {
        for n in 1..=5 {
            assert_eq!(fourier_sparsity_table(&parity(n)), 1);
            assert_eq!(degree_table(&parity(n)), n as u64);
        }
    }

    #[test]
    fn constants() {
        let c = DenseTruthTable::constant(4, true);
        assert_eq!(fourier_sparsity_table(&c), 1);
        assert_eq!(degree_table(&c), 0);
    }

    #[test]
    fn and_gate_values() {
        let and2 = DenseTruthTable::from_fn(2, |e| e == 3);
        assert_eq!(fourier_sparsity_table(&and2), 4);
        assert_eq!(degree_table(&and2), 2);
        let and3 = DenseTruthTable::from_fn(3, |e| e == 7);
        assert_eq!(fourier_sparsity_table(&and3), 8);
        assert_eq!(degree_table(&and3), 3);
    }

    #[test]
    fn tribes_degree() {
        let cfg = Config::default();
        assert_eq!(degree(&tribes(2), &cfg).unwrap(), 4);
    }

    #[test]
    fn invariant_under_input_permutation() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..10 {
            let t = DenseTruthTable::random(5, &mut rng);
            let mut perm: Vec<usize> = (0..5).collect();
            perm.shuffle(&mut rng);
            let p = t.permute_inputs(&perm).unwrap();
            assert_eq!(fourier_sparsity_table(&t), fourier_sparsity_table(&p));
            assert_eq!(degree_table(&t), degree_table(&p));
        }
    }

    #[test]
    fn sparsity_matches_naive_character_sums() {
        // Independent oracle: direct character sums.
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let t = DenseTruthTable::random(4, &mut rng);
            let naive = (0..16usize)
                .filter(|&s| {
                    let sum: i64 = (0..16usize)
                        .map(|e| {
                            let sign = if (e & s).count_ones() % 2 == 1 { -1 } else { 1 };
                            let val = if t.get(e) { -1 } else { 1 };
                            (sign * val) as i64
                        })
                        .sum();
                    sum != 0
                })
                .count() as u64;
            assert_eq!(fourier_sparsity_table(&t), naive);
        }
    }
}
