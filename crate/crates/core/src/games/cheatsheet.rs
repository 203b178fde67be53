//! The cheat-sheet adversary and the constructive flip analysis of its
//! transcripts.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::constructions::{
    build_certificate_claim, cheat_sheet, encode_cell, tribes, CheatSheetSpec,
};
use crate::error::{Error, Result};
use crate::function::StructuredFunction;
use crate::games::{Move, Querier, QueryRecord, Responder, TribesAdversary};
use crate::table::bits_to_index;

/// Adversary against single-bit queriers of `cheat_sheet(tribes(n), c)`:
/// any bit outside the input copies answers 0; bits inside copy `i` defer
/// to an independent TRIBES adversary for that copy.
pub struct CheatsheetAdversary {
    spec: CheatSheetSpec,
    copies: Vec<TribesAdversary>,
    queried_cell_bits: HashSet<usize>,
    touched_cells: HashSet<usize>,
    copy_queries: usize,
}

impl CheatsheetAdversary {
    pub fn new(n: usize, c: usize, cfg: &Config) -> Result<Self> {
        let f = cheat_sheet(tribes(n), c, cfg)?;
        let StructuredFunction::CheatSheet(spec) = f else {
            unreachable!("cheat_sheet builds a cheat sheet")
        };
        Ok(CheatsheetAdversary {
            spec: *spec,
            copies: (0..c).map(|_| TribesAdversary::new(n)).collect(),
            queried_cell_bits: HashSet::new(),
            touched_cells: HashSet::new(),
            copy_queries: 0,
        })
    }

    pub fn spec(&self) -> &CheatSheetSpec {
        &self.spec
    }

    /// Total queries landing in the input-copy region.
    pub fn copy_queries(&self) -> usize {
        self.copy_queries
    }

    /// Indices of cells with at least one queried bit.
    pub fn touched_cells(&self) -> &HashSet<usize> {
        &self.touched_cells
    }

    pub fn copies(&self) -> &[TribesAdversary] {
        &self.copies
    }

    /// Committed value of a 0-based bit position, `None` if unqueried.
    pub fn committed_bit(&self, pos0: usize) -> Option<bool> {
        let n2 = self.spec.base_arity();
        if pos0 < self.spec.copy_region_len() {
            self.copies[pos0 / n2].committed()[pos0 % n2]
        } else {
            self.queried_cell_bits.contains(&pos0).then_some(false)
        }
    }
}

impl Responder for CheatsheetAdversary {
    fn arity(&self) -> usize {
        self.spec.arity()
    }

    fn answer(&mut self, set: &[usize]) -> Result<bool> {
        let [v] = set else {
            return Err(Error::Protocol(
                "cheat-sheet adversary answers single bit positions only".into(),
            ));
        };
        if *v == 0 || *v > self.arity() {
            return Err(Error::Protocol(format!(
                "position {v} outside 1..={}",
                self.arity()
            )));
        }
        let pos0 = v - 1;
        let n2 = self.spec.base_arity();
        if pos0 < self.spec.copy_region_len() {
            self.copy_queries += 1;
            self.copies[pos0 / n2].answer(&[pos0 % n2 + 1])
        } else {
            if !self.queried_cell_bits.insert(pos0) {
                return Err(Error::Protocol(format!("position {v} repeated")));
            }
            let cell = (pos0 - self.spec.copy_region_len()) / self.spec.cell_bits();
            self.touched_cells.insert(cell);
            Ok(false)
        }
    }
}

/// Outcome of analysing a transcript against the cheat-sheet adversary:
/// either the querier spent at least `n^2` queries inside the input copies,
/// or some cell is untouched and both outputs are still realizable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum DichotomyOutcome {
    ManyCopyQueries { copy_queries: usize },
    Flippable {
        cell: usize,
        zero_completion: Vec<bool>,
        one_completion: Vec<bool>,
    },
}

/// Completes all unqueried bits consistently with the adversary's answers so
/// that the copies address `cell` and the output is `target`: copy `i` is
/// completed toward bit `i` of the cell index, and for `target` = 1 the cell
/// is filled with valid certificates for the completed copies (for 0 it is
/// left all-zero, which certifies nothing).
fn build_completion(
    adv: &CheatsheetAdversary,
    cell: usize,
    target: bool,
    cfg: &Config,
) -> Result<Vec<bool>> {
    let spec = adv.spec();
    let n2 = spec.base_arity();
    let mut x = vec![false; spec.arity()];
    for pos0 in 0..spec.arity() {
        if let Some(v) = adv.committed_bit(pos0) {
            x[pos0] = v;
        }
    }
    let mut claims = Vec::with_capacity(spec.address_bits());
    for i in 0..spec.address_bits() {
        let want = cell >> i & 1 == 1;
        let off = spec.copy_offset(i);
        for inner in 0..n2 {
            if adv.committed_bit(off + inner).is_none() {
                x[off + inner] = want;
            }
        }
        let copy = &x[off..off + n2];
        if spec.base_table().get(bits_to_index(copy)) != want {
            return Err(Error::Protocol(format!(
                "copy {i} cannot be completed to value {want}"
            )));
        }
        if target {
            claims.push(build_certificate_claim(
                spec.base_table(),
                copy,
                spec.cert_size(),
                cfg,
            )?);
        }
    }
    if target {
        let bits = encode_cell(spec, &claims)?;
        let start = spec.cell_offset(cell);
        x[start..start + spec.cell_bits()].copy_from_slice(&bits);
    }
    Ok(x)
}

/// Executes the flip argument on the adversary's final state. Errors if
/// neither dichotomy arm holds (fewer than `n^2` copy queries but no cell
/// left untouched, or a completion fails to realize its output).
pub fn dichotomy_analysis(
    adv: &CheatsheetAdversary,
    cfg: &Config,
) -> Result<DichotomyOutcome> {
    let spec = adv.spec();
    if adv.copy_queries() >= spec.base_arity() {
        return Ok(DichotomyOutcome::ManyCopyQueries {
            copy_queries: adv.copy_queries(),
        });
    }
    let cell = (0..spec.num_cells())
        .find(|j| !adv.touched_cells().contains(j))
        .ok_or_else(|| Error::Protocol("every cell touched".into()))?;
    let zero_completion = build_completion(adv, cell, false, cfg)?;
    let one_completion = build_completion(adv, cell, true, cfg)?;
    let f = StructuredFunction::CheatSheet(Box::new(spec.clone()));
    if f.evaluate(&zero_completion)? || !f.evaluate(&one_completion)? {
        return Err(Error::Protocol(
            "completions do not realize both outputs".into(),
        ));
    }
    Ok(DichotomyOutcome::Flippable {
        cell,
        zero_completion,
        one_completion,
    })
}

/// Greedy cell-probing querier: one bit of each copy, then the first bit of
/// every cell but the last, then gives up and outputs 0.
pub struct CellProbeQuerier {
    plan: Vec<usize>,
}

impl CellProbeQuerier {
    pub fn new(spec: &CheatSheetSpec) -> Self {
        let mut plan: Vec<usize> = (0..spec.address_bits())
            .map(|i| spec.copy_offset(i) + 1)
            .collect();
        plan.extend((0..spec.num_cells() - 1).map(|j| spec.cell_offset(j) + 1));
        CellProbeQuerier { plan }
    }
}

impl Querier for CellProbeQuerier {
    fn next_move(&mut self, history: &[QueryRecord]) -> Result<Move> {
        match self.plan.get(history.len()) {
            Some(&pos) => Ok(Move::Query(vec![pos])),
            None => Ok(Move::Output(false)),
        }
    }
}

/// Queries positions `1..=budget` in order, then outputs 0. This is the
/// lexicographically first line of the exhaustive bounded-depth search.
pub struct PrefixQuerier {
    budget: usize,
}

impl PrefixQuerier {
    pub fn new(budget: usize) -> Self {
        PrefixQuerier { budget }
    }
}

impl Querier for PrefixQuerier {
    fn next_move(&mut self, history: &[QueryRecord]) -> Result<Move> {
        if history.len() < self.budget {
            Ok(Move::Query(vec![history.len() + 1]))
        } else {
            Ok(Move::Output(false))
        }
    }
}

/// Exhaustive bounded search: simulates every sequence of `depth` distinct
/// single-bit queries against a fresh adversary and certifies that the end
/// state is still flippable (a flippable end state makes every prefix
/// flippable too, since its completions complete the prefix as well).
/// Returns the number of sequences certified.
///
/// Against a deterministic adversary every adaptive strategy plays one such
/// sequence, so this witnesses that no `depth`-query strategy determines
/// the output.
pub fn exhaustive_small_search(
    n: usize,
    c: usize,
    depth: usize,
    cfg: &Config,
) -> Result<u64> {
    if depth >= n * n {
        return Err(Error::Config(format!(
            "search depth {depth} must stay below n^2 = {}",
            n * n
        )));
    }
    let arity = cheat_sheet(tribes(n), c, cfg)?.arity();
    let total: u128 = (0..depth as u128).fold(1, |acc, i| acc * (arity as u128 - i));
    if total > cfg.enumeration_budget as u128 {
        return Err(Error::Capacity {
            what: "query-sequence enumeration",
            required: total,
            cap: cfg.enumeration_budget as u128,
        });
    }

    fn rec(
        n: usize,
        c: usize,
        prefix: &mut Vec<usize>,
        depth: usize,
        arity: usize,
        cfg: &Config,
        certified: &mut u64,
    ) -> Result<()> {
        if prefix.len() == depth {
            let mut adv = CheatsheetAdversary::new(n, c, cfg)?;
            for &pos in prefix.iter() {
                adv.answer(&[pos])?;
            }
            match dichotomy_analysis(&adv, cfg)? {
                DichotomyOutcome::Flippable { .. } => {
                    *certified += 1;
                    Ok(())
                }
                DichotomyOutcome::ManyCopyQueries { .. } => {
                    unreachable!("depth below n^2")
                }
            }
        } else {
            for pos in 1..=arity {
                if prefix.contains(&pos) {
                    continue;
                }
                prefix.push(pos);
                rec(n, c, prefix, depth, arity, cfg, certified)?;
                prefix.pop();
            }
            Ok(())
        }
    }

    let mut certified = 0u64;
    rec(n, c, &mut Vec::new(), depth, arity, cfg, &mut certified)?;
    Ok(certified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::{play, SweepQuerier};

    fn toy(cfg: &Config) -> CheatsheetAdversary {
        CheatsheetAdversary::new(2, 2, cfg).unwrap()
    }

    #[test]
    fn cell_queries_answer_zero() {
        let cfg = Config::default();
        let mut adv = toy(&cfg);
        let first_cell_bit = adv.spec().cell_offset(0) + 1;
        assert!(!adv.answer(&[first_cell_bit]).unwrap());
        assert_eq!(adv.touched_cells().len(), 1);
        assert_eq!(adv.copy_queries(), 0);
        // Repeats inside the cell region are protocol errors too.
        assert!(adv.answer(&[first_cell_bit]).is_err());
    }

    #[test]
    fn copy_queries_replay_the_tribes_adversary() {
        let cfg = Config::default();
        let mut adv = toy(&cfg);
        let mut reference = TribesAdversary::new(2);
        for v in 1..=4usize {
            assert_eq!(
                adv.answer(&[v]).unwrap(),
                reference.answer(&[v]).unwrap()
            );
        }
        assert_eq!(adv.copy_queries(), 4);
        // The second copy has independent state.
        let mut adv = toy(&cfg);
        assert!(!adv.answer(&[5]).unwrap());
        assert!(adv.answer(&[6]).unwrap());
    }

    #[test]
    fn sweep_querier_hits_the_copy_arm() {
        let cfg = Config::default();
        let mut adv = toy(&cfg);
        let f = StructuredFunction::CheatSheet(Box::new(adv.spec().clone()));
        let mut q = SweepQuerier::new(f);
        let t = play(&mut q, &mut adv, 100).unwrap();
        assert!(t.complete);
        assert!(matches!(
            dichotomy_analysis(&adv, &cfg).unwrap(),
            DichotomyOutcome::ManyCopyQueries { copy_queries: 8 }
        ));
    }

    #[test]
    fn cell_probe_querier_hits_the_flip_arm() {
        let cfg = Config::default();
        let mut adv = toy(&cfg);
        let mut q = CellProbeQuerier::new(&adv.spec().clone());
        let t = play(&mut q, &mut adv, 100).unwrap();
        assert!(t.complete);
        assert_eq!(t.one_count, 0);
        match dichotomy_analysis(&adv, &cfg).unwrap() {
            DichotomyOutcome::Flippable { cell, .. } => assert_eq!(cell, 3),
            other => panic!("expected flip arm, got {other:?}"),
        }
    }

    #[test]
    fn fresh_adversary_is_flippable() {
        let cfg = Config::default();
        let adv = toy(&cfg);
        let out = dichotomy_analysis(&adv, &cfg).unwrap();
        let DichotomyOutcome::Flippable {
            cell,
            zero_completion,
            one_completion,
        } = out
        else {
            panic!("no queries yet")
        };
        assert_eq!(cell, 0);
        let f = StructuredFunction::CheatSheet(Box::new(adv.spec().clone()));
        assert!(!f.evaluate(&zero_completion).unwrap());
        assert!(f.evaluate(&one_completion).unwrap());
    }

    #[test]
    fn exhaustive_depth_one_and_two() {
        let cfg = Config::default();
        let arity = 56u64;
        assert_eq!(exhaustive_small_search(2, 2, 1, &cfg).unwrap(), arity);
        assert_eq!(
            exhaustive_small_search(2, 2, 2, &cfg).unwrap(),
            arity * (arity - 1)
        );
        assert!(exhaustive_small_search(2, 2, 4, &cfg).is_err());
    }
}
