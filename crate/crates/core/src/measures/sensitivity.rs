//! Sensitivity: the number of single-bit flips that change the value.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::function::StructuredFunction;
use crate::measures::ValueTag;
use crate::table::DenseTruthTable;

/// Sensitivity at a point, by direct evaluation of all neighbors. Works for
/// any evaluable function, dense or structured.
pub fn sensitivity_at(f: &StructuredFunction, x: &[bool]) -> Result<u64> {
    let value = f.evaluate(x)?;
    let mut flipped = x.to_vec();
    let mut count = 0;
    for i in 0..x.len() {
        flipped[i] = !flipped[i];
        if f.evaluate(&flipped)? != value {
            count += 1;
        }
        flipped[i] = !flipped[i];
    }
    Ok(count)
}

/// Maximum sensitivity over the tagged input set.
pub fn sensitivity(f: &StructuredFunction, tag: ValueTag, cfg: &Config) -> Result<u64> {
    if f.arity() > cfg.dense_cap {
        return Err(Error::Capacity {
            what: "aggregate sensitivity",
            required: f.arity() as u128,
            cap: cfg.dense_cap as u128,
        });
    }
    let table = f.materialize(cfg.dense_cap)?;
    Ok(sensitivity_of_table(&table, tag))
}

pub fn sensitivity_of_table(table: &DenseTruthTable, tag: ValueTag) -> u64 {
    let arity = table.arity();
    let mut max = 0u64;
    for e in 0..table.len() {
        let v = table.get(e);
        if !tag.admits(v) {
            continue;
        }
        let mut s = 0u64;
        for i in 0..arity {
            if table.get(e ^ (1 << i)) != v {
                s += 1;
            }
        }
        max = max.max(s);
    }
    max
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::rubinstein_base;
    use crate::table::index_to_bits;

    fn parity(n: usize) -> StructuredFunction {
        StructuredFunction::Dense(DenseTruthTable::from_fn(n, |e| e.count_ones() % 2 == 1))
    }

    #[test]
    fn parity_is_fully_sensitive() {
        let p = parity(3);
        for e in 0..8 {
            assert_eq!(sensitivity_at(&p, &index_to_bits(e, 3)).unwrap(), 3);
        }
        assert_eq!(
            sensitivity(&p, ValueTag::All, &Config::default()).unwrap(),
            3
        );
    }

    #[test]
    fn rubinstein_sensitivity_profile() {
        let g = rubinstein_base(2, 2);
        // Accepting inputs have every bit sensitive.
        assert_eq!(
            sensitivity_at(&g, &[true, true, false, false]).unwrap(),
            4
        );
        // Rejecting inputs have at most one sensitive bit; 0 at the origin.
        assert_eq!(sensitivity_at(&g, &[false; 4]).unwrap(), 0);
        let table = g.materialize(24).unwrap();
        for e in 0..16 {
            if !table.get(e) {
                let s = sensitivity_at(&g, &index_to_bits(e, 4)).unwrap();
                assert!(s <= 1, "rejecting input {e} has sensitivity {s}");
            }
        }
    }

    #[test]
    fn tagged_aggregates() {
        let g = rubinstein_base(2, 2);
        assert_eq!(sensitivity(&g, ValueTag::OnOnes, &Config::default()).unwrap(), 4);
        assert_eq!(sensitivity(&g, ValueTag::OnZeros, &Config::default()).unwrap(), 1);
    }
}
