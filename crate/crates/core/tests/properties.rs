//! Property-based checks for the representation layer: restriction
//! semantics, text round trips, and enumeration counts.

use proptest::prelude::*;

use bfc_core::restriction::{enumerate_restrictions, restriction_count};
use bfc_core::{Cell, DenseTruthTable, Restriction, StructuredFunction};

fn arb_table(arity: usize) -> impl Strategy<Value = DenseTruthTable> {
    prop::collection::vec(any::<bool>(), 1 << arity)
        .prop_map(move |bits| DenseTruthTable::from_bits(arity, &bits).unwrap())
}

fn arb_restriction(arity: usize) -> impl Strategy<Value = Restriction> {
    prop::collection::vec(0u8..3, arity).prop_map(|cells| {
        Restriction::new(
            cells
                .into_iter()
                .map(|c| match c {
                    0 => Cell::Zero,
                    1 => Cell::One,
                    _ => Cell::Free,
                })
                .collect(),
        )
    })
}

proptest! {
    #[test]
    fn restriction_evaluation_matches_merge(
        table in arb_table(5),
        rho in arb_restriction(5),
        assignment in 0usize..32,
    ) {
        let f = StructuredFunction::Dense(table);
        let restricted = f.restrict(rho.clone()).unwrap();
        let free = rho.free_count();
        prop_assert_eq!(restricted.arity(), free);
        let y: Vec<bool> = (0..free).map(|i| assignment >> i & 1 == 1).collect();
        let merged = rho.merge(&y).unwrap();
        prop_assert_eq!(
            restricted.evaluate(&y).unwrap(),
            f.evaluate(&merged).unwrap()
        );
    }

    #[test]
    fn input_negation_is_an_involution(table in arb_table(4), e in 0usize..16) {
        let f = StructuredFunction::Dense(table);
        let once = f.negate_inputs();
        let twice = once.negate_inputs();
        prop_assert_eq!(
            twice.evaluate_index(e).unwrap(),
            f.evaluate_index(e).unwrap()
        );
        prop_assert_eq!(
            once.evaluate_index(e).unwrap(),
            f.evaluate_index(!e & 0xf).unwrap()
        );
    }

    #[test]
    fn table_text_round_trips(table in arb_table(4)) {
        let text = table.to_text();
        prop_assert_eq!(DenseTruthTable::from_text(&text).unwrap(), table);
    }

    #[test]
    fn restriction_display_parses_back(rho in arb_restriction(6)) {
        let literal = rho.to_string();
        prop_assert_eq!(Restriction::parse(&literal).unwrap(), rho);
    }

    #[test]
    fn composing_with_all_free_is_identity(rho in arb_restriction(5)) {
        let id = Restriction::all_free(rho.free_count());
        prop_assert_eq!(rho.compose(&id).unwrap(), rho);
    }
}

#[test]
fn enumeration_counts_match_the_formula() {
    for arity in 0..=4usize {
        for free in 0..=arity {
            let listed: Vec<Restriction> =
                enumerate_restrictions(arity, free, 1 << 20).unwrap().collect();
            assert_eq!(listed.len() as u128, restriction_count(arity, free));
            // All distinct, all with the requested free count.
            for rho in &listed {
                assert_eq!(rho.free_count(), free);
            }
            let mut keys: Vec<String> = listed.iter().map(|r| r.to_string()).collect();
            keys.sort();
            keys.dedup();
            assert_eq!(keys.len(), listed.len());
        }
    }
}

#[test]
fn enumeration_order_is_stable() {
    let first: Vec<String> = enumerate_restrictions(4, 2, 1 << 20)
        .unwrap()
        .map(|r| r.to_string())
        .collect();
    let second: Vec<String> = enumerate_restrictions(4, 2, 1 << 20)
        .unwrap()
        .map(|r| r.to_string())
        .collect();
    assert_eq!(first, second);
}
