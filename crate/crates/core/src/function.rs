//! Structured Boolean functions: lazily evaluated symbolic families plus
//! dense tables, closed under restriction and input negation.

use serde_json::json;

use crate::constructions::{self, CheatSheetSpec};
use crate::error::{Error, Result};
use crate::restriction::Restriction;
use crate::table::{index_to_bits, Constancy, DenseTruthTable};

/// A Boolean function, either dense or given by a symbolic family.
///
/// Symbolic families evaluate lazily and are usable at arities far beyond
/// the dense cap; only operations that genuinely need the full table
/// (materialize, most measures) are capped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructuredFunction {
    Dense(DenseTruthTable),
    /// Accepts exactly the inputs with one contiguous all-ones block of
    /// `block_size` variables and zeros everywhere else.
    RubinsteinBase { block_size: usize, num_blocks: usize },
    /// OR of `copies` disjoint consecutive copies of the base above.
    ModifiedRubinstein {
        block_size: usize,
        num_blocks: usize,
        copies: usize,
    },
    /// AND of `n` disjoint ORs of `n` consecutive variables each.
    Tribes { n: usize },
    /// OR of `n` disjoint ANDs of `n` consecutive variables each.
    DualTribes { n: usize },
    CheatSheet(Box<CheatSheetSpec>),
    Restricted {
        inner: Box<StructuredFunction>,
        rho: Restriction,
    },
    /// Evaluates the inner function on the complemented input.
    InputNegated(Box<StructuredFunction>),
}

impl StructuredFunction {
    pub fn arity(&self) -> usize {
        match self {
            StructuredFunction::Dense(t) => t.arity(),
            StructuredFunction::RubinsteinBase {
                block_size,
                num_blocks,
            } => block_size * num_blocks,
            StructuredFunction::ModifiedRubinstein {
                block_size,
                num_blocks,
                copies,
            } => block_size * num_blocks * copies,
            StructuredFunction::Tribes { n } | StructuredFunction::DualTribes { n } => n * n,
            StructuredFunction::CheatSheet(spec) => spec.arity(),
            StructuredFunction::Restricted { rho, .. } => rho.free_count(),
            StructuredFunction::InputNegated(inner) => inner.arity(),
        }
    }

    /// Evaluates the function at `x`. Purely functional.
    pub fn evaluate(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.arity() {
            return Err(Error::ShapeMismatch {
                expected: self.arity(),
                got: x.len(),
            });
        }
        Ok(match self {
            StructuredFunction::Dense(t) => t.get(crate::table::bits_to_index(x)),
            StructuredFunction::RubinsteinBase {
                block_size,
                num_blocks,
            } => constructions::eval_rubinstein_base(*block_size, *num_blocks, x),
            StructuredFunction::ModifiedRubinstein {
                block_size,
                num_blocks,
                copies,
            } => {
                let copy_len = block_size * num_blocks;
                (0..*copies).any(|c| {
                    constructions::eval_rubinstein_base(
                        *block_size,
                        *num_blocks,
                        &x[c * copy_len..(c + 1) * copy_len],
                    )
                })
            }
            StructuredFunction::Tribes { n } => {
                (0..*n).all(|i| x[i * n..(i + 1) * n].iter().any(|&b| b))
            }
            StructuredFunction::DualTribes { n } => {
                (0..*n).any(|i| x[i * n..(i + 1) * n].iter().all(|&b| b))
            }
            StructuredFunction::CheatSheet(spec) => constructions::eval_cheat_sheet(spec, x)?,
            StructuredFunction::Restricted { inner, rho } => {
                inner.evaluate(&rho.merge(x)?)?
            }
            StructuredFunction::InputNegated(inner) => {
                let flipped: Vec<bool> = x.iter().map(|&b| !b).collect();
                inner.evaluate(&flipped)?
            }
        })
    }

    /// Evaluates at the point with the given table index.
    pub fn evaluate_index(&self, index: usize) -> Result<bool> {
        self.evaluate(&index_to_bits(index, self.arity()))
    }

    /// Materializes the full truth table. Errors when the arity exceeds
    /// `dense_cap`.
    pub fn materialize(&self, dense_cap: usize) -> Result<DenseTruthTable> {
        if self.arity() > dense_cap {
            return Err(Error::Capacity {
                what: "dense materialization",
                required: self.arity() as u128,
                cap: dense_cap as u128,
            });
        }
        if let StructuredFunction::Dense(t) = self {
            return Ok(t.clone());
        }
        let arity = self.arity();
        let mut out = DenseTruthTable::constant(arity, false);
        for e in 0..(1usize << arity) {
            if self.evaluate(&index_to_bits(e, arity))? {
                out.set(e, true);
            }
        }
        Ok(out)
    }

    /// Restricts by `rho`; free variables of the result are renumbered in
    /// ascending original-index order.
    pub fn restrict(&self, rho: Restriction) -> Result<StructuredFunction> {
        if rho.arity() != self.arity() {
            return Err(Error::ShapeMismatch {
                expected: self.arity(),
                got: rho.arity(),
            });
        }
        // Collapse chained restrictions into a single one.
        if let StructuredFunction::Restricted {
            inner,
            rho: ref outer,
        } = self
        {
            let combined = outer.compose(&rho)?;
            return Ok(StructuredFunction::Restricted {
                inner: inner.clone(),
                rho: combined,
            });
        }
        Ok(StructuredFunction::Restricted {
            inner: Box::new(self.clone()),
            rho,
        })
    }

    /// The function `x -> f(complement(x))`.
    pub fn negate_inputs(&self) -> StructuredFunction {
        match self {
            StructuredFunction::InputNegated(inner) => (**inner).clone(),
            other => StructuredFunction::InputNegated(Box::new(other.clone())),
        }
    }

    /// Classifies the function as constant or not.
    ///
    /// Dense-capable functions are scanned exhaustively. A restricted
    /// Rubinstein base over the cap is classified by pattern analysis;
    /// any other over-cap function is a capacity error rather than a guess.
    pub fn is_constant(&self, dense_cap: usize) -> Result<Constancy> {
        if let StructuredFunction::Restricted { inner, rho } = self {
            if let StructuredFunction::RubinsteinBase {
                block_size,
                num_blocks,
            } = **inner
            {
                return Ok(constructions::rubinstein_restricted_constancy(
                    block_size, num_blocks, rho,
                ));
            }
        }
        if self.arity() <= dense_cap {
            return Ok(self.materialize(dense_cap)?.constancy());
        }
        Err(Error::Capacity {
            what: "constancy scan",
            required: self.arity() as u128,
            cap: dense_cap as u128,
        })
    }

    /// JSON descriptor `{family, params}` used in reports.
    pub fn descriptor(&self) -> serde_json::Value {
        match self {
            StructuredFunction::Dense(t) => json!({
                "family": "dense",
                "params": {"arity": t.arity()},
            }),
            StructuredFunction::RubinsteinBase {
                block_size,
                num_blocks,
            } => json!({
                "family": "rub",
                "params": {"b": block_size, "n": num_blocks},
            }),
            StructuredFunction::ModifiedRubinstein {
                block_size,
                num_blocks,
                copies,
            } => json!({
                "family": "modrub",
                "params": {"b": block_size, "n": num_blocks, "r": copies},
            }),
            StructuredFunction::Tribes { n } => json!({
                "family": "tribes",
                "params": {"n": n},
            }),
            StructuredFunction::DualTribes { n } => json!({
                "family": "dualtribes",
                "params": {"n": n},
            }),
            StructuredFunction::CheatSheet(spec) => json!({
                "family": "cheatsheet",
                "params": {
                    "base": spec.base().descriptor(),
                    "c": spec.address_bits(),
                    "arity": spec.arity(),
                },
            }),
            StructuredFunction::Restricted { inner, rho } => json!({
                "family": "restricted",
                "params": {"inner": inner.descriptor(), "rho": rho.to_string()},
            }),
            StructuredFunction::InputNegated(inner) => json!({
                "family": "input_negated",
                "params": {"inner": inner.descriptor()},
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::restriction::Cell;
    use crate::table::bits_to_index;

    fn and2() -> StructuredFunction {
        StructuredFunction::Dense(DenseTruthTable::from_fn(2, |e| e == 3))
    }

    #[test]
    fn evaluate_dense_matches_lookup() {
        let f = and2();
        assert!(f.evaluate(&[true, true]).unwrap());
        assert!(!f.evaluate(&[true, false]).unwrap());
    }

    #[test]
    fn evaluate_shape_error() {
        assert!(matches!(
            and2().evaluate(&[true]),
            Err(Error::ShapeMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn tribes_examples() {
        let t2 = StructuredFunction::Tribes { n: 2 };
        assert!(t2.evaluate(&[true, false, false, true]).unwrap());
        assert!(!t2.evaluate(&[true, true, false, false]).unwrap());
        // 9 of 16 inputs accept.
        assert_eq!(t2.materialize(24).unwrap().count_ones(), 9);
    }

    #[test]
    fn rubinstein_base_examples() {
        let g = StructuredFunction::RubinsteinBase {
            block_size: 2,
            num_blocks: 2,
        };
        assert!(g.evaluate(&[true, true, false, false]).unwrap());
        assert!(g.evaluate(&[false, false, true, true]).unwrap());
        let table = g.materialize(24).unwrap();
        assert_eq!(table.count_ones(), 2);
        assert!(table.get(bits_to_index(&[true, true, false, false])));
        assert!(table.get(bits_to_index(&[false, false, true, true])));
    }

    #[test]
    fn restrict_and_on_two_vars() {
        let f = and2();
        // (One, Free) -> identity on 1 var.
        let id = f
            .restrict(Restriction::new(vec![Cell::One, Cell::Free]))
            .unwrap();
        assert!(!id.evaluate(&[false]).unwrap());
        assert!(id.evaluate(&[true]).unwrap());
        // (Zero, Free) -> constant 0.
        let zero = f
            .restrict(Restriction::new(vec![Cell::Zero, Cell::Free]))
            .unwrap();
        assert_eq!(zero.is_constant(24).unwrap(), Constancy::Constant0);
    }

    #[test]
    fn restrict_rubinstein_to_and() {
        let g = StructuredFunction::RubinsteinBase {
            block_size: 2,
            num_blocks: 2,
        };
        let restricted = g.restrict(Restriction::parse("**00").unwrap()).unwrap();
        let and_table = and2().materialize(24).unwrap();
        assert_eq!(restricted.materialize(24).unwrap(), and_table);
    }

    #[test]
    fn restriction_round_trip_all_free() {
        let f = StructuredFunction::Tribes { n: 2 };
        let r = f.restrict(Restriction::all_free(4)).unwrap();
        assert_eq!(r.materialize(24).unwrap(), f.materialize(24).unwrap());
    }

    #[test]
    fn restriction_composition_collapses() {
        let f = StructuredFunction::ModifiedRubinstein {
            block_size: 2,
            num_blocks: 2,
            copies: 2,
        };
        let step1 = f.restrict(Restriction::parse("**00**00").unwrap()).unwrap();
        let step2 = step1.restrict(Restriction::parse("0***").unwrap()).unwrap();
        let combined = f.restrict(Restriction::parse("0*00**00").unwrap()).unwrap();
        assert_eq!(
            step2.materialize(24).unwrap(),
            combined.materialize(24).unwrap()
        );
    }

    #[test]
    fn negate_inputs_is_involution() {
        let f = StructuredFunction::Tribes { n: 2 };
        let nn = f.negate_inputs().negate_inputs();
        assert_eq!(nn.materialize(24).unwrap(), f.materialize(24).unwrap());
    }

    #[test]
    fn negate_inputs_examples() {
        // AND on 2 vars negated: value 1 only at (0, 0).
        let neg = and2().negate_inputs();
        let t = neg.materialize(24).unwrap();
        assert_eq!(t.count_ones(), 1);
        assert!(t.get(0));
        // Parity on 3 vars: complementing flips the value on odd arity.
        let parity =
            StructuredFunction::Dense(DenseTruthTable::from_fn(3, |e| e.count_ones() % 2 == 1));
        let neg = parity.negate_inputs();
        for e in 0..8 {
            assert_eq!(
                neg.evaluate_index(e).unwrap(),
                !parity.evaluate_index(e).unwrap()
            );
        }
        // Tribes complement equals dual tribes on negated output.
        let tribes = StructuredFunction::Tribes { n: 2 };
        let dual = StructuredFunction::DualTribes { n: 2 };
        for e in 0..16 {
            assert_eq!(
                dual.evaluate_index(e).unwrap(),
                !tribes.negate_inputs().evaluate_index(e).unwrap()
            );
        }
    }

    #[test]
    fn materialize_over_cap_errors() {
        let f = StructuredFunction::Tribes { n: 4 };
        assert!(matches!(
            f.materialize(10),
            Err(Error::Capacity { cap: 10, .. })
        ));
    }

    #[test]
    fn constancy_classification() {
        let c1 = StructuredFunction::Dense(DenseTruthTable::constant(3, true));
        assert_eq!(c1.is_constant(24).unwrap(), Constancy::Constant1);
        let parity =
            StructuredFunction::Dense(DenseTruthTable::from_fn(2, |e| e.count_ones() % 2 == 1));
        assert_eq!(parity.is_constant(24).unwrap(), Constancy::NonConstant);
        // Restricted Rubinstein: (One, Zero, Free, Free) kills block 1 and
        // forbids block 2, so the result is constant 0.
        let g = StructuredFunction::RubinsteinBase {
            block_size: 2,
            num_blocks: 2,
        };
        let r = g.restrict(Restriction::parse("10**").unwrap()).unwrap();
        assert_eq!(r.is_constant(24).unwrap(), Constancy::Constant0);
    }

    #[test]
    fn structured_constancy_rule_matches_scan() {
        let g = StructuredFunction::RubinsteinBase {
            block_size: 2,
            num_blocks: 3,
        };
        for rho in crate::restriction::enumerate_all_restrictions(6, 1 << 20).unwrap() {
            let restricted = g.restrict(rho.clone()).unwrap();
            let by_rule = constructions::rubinstein_restricted_constancy(2, 3, &rho);
            let by_scan = restricted.materialize(24).unwrap().constancy();
            assert_eq!(by_rule, by_scan, "rho = {rho}");
        }
    }
}
