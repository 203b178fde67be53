//! The TRIBES 0-depth adversary, the matching AND-query strategy, and the
//! exact game-value search.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::constructions::tribes;
use crate::error::{Error, Result};
use crate::games::{Move, Querier, QueryRecord, Responder};

/// Adversary against single-bit queriers of `tribes(n)`.
///
/// On a query of variable `v` in block `i`, the variable is added to the
/// queried set `X_i`; the answer is 1 if `|X_i| = n` and the total queried
/// count is still below `n^2`, else 0. Answers are committed: the adversary
/// only ever claims inputs consistent with everything said so far.
pub struct TribesAdversary {
    n: usize,
    committed: Vec<Option<bool>>,
    block_counts: Vec<usize>,
    total: usize,
}

impl TribesAdversary {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        TribesAdversary {
            n,
            committed: vec![None; n * n],
            block_counts: vec![0; n],
            total: 0,
        }
    }

    /// Per-block queried counts `|X_1|, ..., |X_n|`.
    pub fn block_counts(&self) -> &[usize] {
        &self.block_counts
    }

    pub fn total_queried(&self) -> usize {
        self.total
    }

    /// Committed value per 0-based variable, `None` if unqueried.
    pub fn committed(&self) -> &[Option<bool>] {
        &self.committed
    }

    fn answer_single(&mut self, v0: usize) -> Result<bool> {
        if self.committed[v0].is_some() {
            return Err(Error::Protocol(format!("variable {} repeated", v0 + 1)));
        }
        let block = v0 / self.n;
        self.block_counts[block] += 1;
        self.total += 1;
        let answer = self.block_counts[block] == self.n && self.total < self.n * self.n;
        self.committed[v0] = Some(answer);
        Ok(answer)
    }
}

impl Responder for TribesAdversary {
    fn arity(&self) -> usize {
        self.n * self.n
    }

    fn answer(&mut self, set: &[usize]) -> Result<bool> {
        for &v in set {
            if v == 0 || v > self.arity() {
                return Err(Error::Protocol(format!(
                    "variable {v} outside 1..={}",
                    self.arity()
                )));
            }
        }
        if let [v] = set {
            return self.answer_single(v - 1);
        }
        // Conjunction queries: each fresh variable gets the single-variable
        // rule in order, already-committed variables reuse their value; the
        // conjunction answers the AND.
        let mut all = true;
        for &v in set {
            let value = match self.committed[v - 1] {
                Some(x) => x,
                None => self.answer_single(v - 1)?,
            };
            all &= value;
        }
        Ok(all)
    }
}

/// The explicit AND-query strategy for `tribes(n)`: first probe `n - 1`
/// single variables in each block; then, if some blocks are still all-0,
/// one conjunction of their remaining variables decides the output.
pub struct TribesAndStrategy {
    n: usize,
}

impl TribesAndStrategy {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        TribesAndStrategy { n }
    }

    /// Blocks whose `n - 1` first-phase probes all answered 0.
    fn zero_blocks(&self, history: &[QueryRecord]) -> Vec<usize> {
        let n = self.n;
        (0..n)
            .filter(|&j| {
                history[j * (n - 1)..(j + 1) * (n - 1)]
                    .iter()
                    .all(|q| !q.answer)
            })
            .collect()
    }
}

impl Querier for TribesAndStrategy {
    fn next_move(&mut self, history: &[QueryRecord]) -> Result<Move> {
        let n = self.n;
        let phase1 = n * (n - 1);
        if history.len() < phase1 {
            let k = history.len();
            let block = k / (n - 1);
            let idx = k % (n - 1);
            return Ok(Move::Query(vec![block * n + idx + 1]));
        }
        if history.len() == phase1 {
            let zero_blocks = self.zero_blocks(history);
            if zero_blocks.is_empty() {
                // Every block already contains a 1.
                return Ok(Move::Output(true));
            }
            return Ok(Move::Query(
                zero_blocks.iter().map(|&j| j * n + n).collect(),
            ));
        }
        // The final conjunction answered: 1 means every still-zero block got
        // its last variable set, 0 means some block is entirely 0.
        Ok(Move::Output(history.last().unwrap().answer))
    }
}

/// Result of the exact game-value search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GameValueReport {
    /// Minimum over querier strategies of the 0-answers forced by the
    /// adversary before the value is determined.
    pub value: u64,
    /// Number of distinct adversary states certified flippable.
    pub states_certified: u64,
}

/// Representative committed assignment for an adversary state given only
/// the per-block queried counts: the first `c` variables of each block are
/// queried, all answered 0 except the completing query of a full block,
/// which was answered 1 (the total is below `n^2` throughout).
fn representative_committed(n: usize, counts: &[usize]) -> Vec<Option<bool>> {
    let mut committed = vec![None; n * n];
    for (j, &c) in counts.iter().enumerate() {
        for i in 0..c {
            committed[j * n + i] = Some(c == n && i == n - 1);
        }
    }
    committed
}

/// Asserts that both completions of a partial adversary state are live:
/// all-remaining-1 evaluates to 1 and all-remaining-0 to 0.
fn certify_flippable(n: usize, committed: &[Option<bool>]) -> Result<()> {
    let t = tribes(n);
    let up: Vec<bool> = committed.iter().map(|o| o.unwrap_or(true)).collect();
    let down: Vec<bool> = committed.iter().map(|o| o.unwrap_or(false)).collect();
    if t.evaluate(&up)? && !t.evaluate(&down)? {
        Ok(())
    } else {
        Err(Error::Protocol(format!(
            "adversary state not flippable: {committed:?}"
        )))
    }
}

/// Exact minimum, over all querier strategies, of the number of 0-answers
/// the TRIBES adversary forces before the value is determined.
///
/// The adversary's behaviour depends only on the per-block queried counts,
/// so the search memoizes over the sorted count multiset. Every reachable
/// partial state is additionally certified flippable — both completions
/// (remaining variables all 1 / all 0) realize different outputs — which is
/// exactly the property making all `n^2` queries necessary.
pub fn adversary_game_value(n: usize) -> Result<GameValueReport> {
    if n == 0 || n > 3 {
        return Err(Error::Capacity {
            what: "adversary game state space",
            required: n as u128,
            cap: 3,
        });
    }
    let mut memo: HashMap<Vec<usize>, u64> = HashMap::new();
    let mut certified: HashSet<Vec<usize>> = HashSet::new();

    fn rec(
        n: usize,
        counts: &mut Vec<usize>,
        total: usize,
        memo: &mut HashMap<Vec<usize>, u64>,
        certified: &mut HashSet<Vec<usize>>,
    ) -> Result<u64> {
        let mut key = counts.clone();
        key.sort_unstable();
        if total < n * n && certified.insert(key.clone()) {
            certify_flippable(n, &representative_committed(n, counts))?;
        }
        if total == n * n {
            return Ok(0);
        }
        if let Some(&v) = memo.get(&key) {
            return Ok(v);
        }
        let mut best = u64::MAX;
        let mut tried: HashSet<usize> = HashSet::new();
        for j in 0..n {
            let c = counts[j];
            if c == n || !tried.insert(c) {
                continue;
            }
            let answer = c + 1 == n && total + 1 < n * n;
            counts[j] += 1;
            let rest = rec(n, counts, total + 1, memo, certified)?;
            counts[j] -= 1;
            best = best.min(rest + (!answer) as u64);
        }
        memo.insert(key, best);
        Ok(best)
    }

    let mut counts = vec![0usize; n];
    let value = rec(n, &mut counts, 0, &mut memo, &mut certified)?;
    Ok(GameValueReport {
        value,
        states_certified: certified.len() as u64,
    })
}

/// Replays every query order of all `n^2` variables against a fresh
/// adversary, checking that each proper prefix is flippable and that the
/// full path has exactly `n^2 - n + 1` zero answers and `n - 1` one
/// answers. Returns the number of orders checked.
pub fn verify_forcing_all_orders(n: usize) -> Result<u64> {
    if n == 0 || n > 3 {
        return Err(Error::Capacity {
            what: "query-order enumeration",
            required: n as u128,
            cap: 3,
        });
    }
    let arity = n * n;
    let mut order: Vec<usize> = (0..arity).collect();
    let mut checked = 0u64;

    fn permute(
        order: &mut Vec<usize>,
        k: usize,
        n: usize,
        checked: &mut u64,
    ) -> Result<()> {
        let arity = n * n;
        if k == arity {
            let mut adv = TribesAdversary::new(n);
            let mut zeros = 0u64;
            let mut ones = 0u64;
            for (step, &v0) in order.iter().enumerate() {
                if step > 0 {
                    certify_flippable(n, adv.committed())?;
                }
                if adv.answer(&[v0 + 1])? {
                    ones += 1;
                } else {
                    zeros += 1;
                }
            }
            let want_zeros = (arity - n + 1) as u64;
            if zeros != want_zeros || ones != (n - 1) as u64 {
                return Err(Error::Protocol(format!(
                    "order {order:?}: {zeros} zeros / {ones} ones, expected {want_zeros} / {}",
                    n - 1
                )));
            }
            *checked += 1;
            return Ok(());
        }
        for i in k..arity {
            order.swap(k, i);
            permute(order, k + 1, n, checked)?;
            order.swap(k, i);
        }
        Ok(())
    }

    permute(&mut order, 0, n, &mut checked)?;
    Ok(checked)
}
