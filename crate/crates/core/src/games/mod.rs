//! Querier-vs-responder query games.
//!
//! A querier repeatedly asks conjunction queries (singletons for plain bit
//! queries) and eventually outputs a bit; a responder answers each query.
//! Both sides are deterministic: the next move is a function of the
//! transcript so far, which makes exact game-value search possible.

mod cheatsheet;
mod tribes;

pub use cheatsheet::{
    dichotomy_analysis, exhaustive_small_search, CellProbeQuerier, CheatsheetAdversary,
    DichotomyOutcome, PrefixQuerier,
};
pub use tribes::{
    adversary_game_value, verify_forcing_all_orders, GameValueReport, TribesAdversary,
    TribesAndStrategy,
};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::StructuredFunction;

/// One answered query: the conjunction's 1-based variable set (sorted) and
/// the answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub set: Vec<usize>,
    pub answer: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Ask the conjunction of these 1-based variables.
    Query(Vec<usize>),
    Output(bool),
}

pub trait Querier {
    /// Next move given the answered queries so far.
    fn next_move(&mut self, history: &[QueryRecord]) -> Result<Move>;
}

pub trait Responder {
    fn arity(&self) -> usize;

    /// Answers a conjunction query over sorted, in-range, 1-based variables.
    fn answer(&mut self, set: &[usize]) -> Result<bool>;
}

/// Record of one played game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameTranscript {
    pub queries: Vec<QueryRecord>,
    pub zero_count: u64,
    pub one_count: u64,
    pub output: Option<bool>,
    /// False when the query limit was hit before the querier output.
    pub complete: bool,
}

impl GameTranscript {
    /// Recomputes the answer counts from the query list.
    pub fn recount(&self) -> (u64, u64) {
        let ones = self.queries.iter().filter(|q| q.answer).count() as u64;
        (self.queries.len() as u64 - ones, ones)
    }
}

/// Runs the game loop until the querier outputs or `query_limit` queries
/// have been answered. Repeating an already-fixed variable as a singleton
/// query is a protocol error; hitting the limit yields a transcript flagged
/// incomplete.
pub fn play(
    querier: &mut dyn Querier,
    responder: &mut dyn Responder,
    query_limit: usize,
) -> Result<GameTranscript> {
    assert!(query_limit >= 1);
    let arity = responder.arity();
    let mut transcript = GameTranscript {
        queries: Vec::new(),
        zero_count: 0,
        one_count: 0,
        output: None,
        complete: false,
    };
    let mut fixed_singles: HashSet<usize> = HashSet::new();
    loop {
        match querier.next_move(&transcript.queries)? {
            Move::Output(v) => {
                transcript.output = Some(v);
                transcript.complete = true;
                return Ok(transcript);
            }
            Move::Query(mut set) => {
                if transcript.queries.len() >= query_limit {
                    // Limit hit without an output: truncated transcript.
                    return Ok(transcript);
                }
                if set.is_empty() {
                    return Err(Error::Protocol("empty conjunction query".into()));
                }
                set.sort_unstable();
                if set.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::Protocol(format!(
                        "duplicate variable in query {set:?}"
                    )));
                }
                if set.iter().any(|&v| v == 0 || v > arity) {
                    return Err(Error::Protocol(format!(
                        "query {set:?} outside 1..={arity}"
                    )));
                }
                if set.len() == 1 && !fixed_singles.insert(set[0]) {
                    return Err(Error::Protocol(format!(
                        "variable {} already fixed",
                        set[0]
                    )));
                }
                let answer = responder.answer(&set)?;
                if answer {
                    transcript.one_count += 1;
                } else {
                    transcript.zero_count += 1;
                }
                transcript.queries.push(QueryRecord { set, answer });
            }
        }
    }
}

/// A querier that outputs a fixed value without querying.
pub struct ImmediateOutput(pub bool);

impl Querier for ImmediateOutput {
    fn next_move(&mut self, _history: &[QueryRecord]) -> Result<Move> {
        Ok(Move::Output(self.0))
    }
}

/// The plain greedy querier: reads every variable as a singleton query in
/// order, then outputs `f` applied to the answers.
pub struct SweepQuerier {
    f: StructuredFunction,
}

impl SweepQuerier {
    pub fn new(f: StructuredFunction) -> Self {
        SweepQuerier { f }
    }
}

impl Querier for SweepQuerier {
    fn next_move(&mut self, history: &[QueryRecord]) -> Result<Move> {
        let arity = self.f.arity();
        if history.len() < arity {
            return Ok(Move::Query(vec![history.len() + 1]));
        }
        let mut x = vec![false; arity];
        for q in history {
            x[q.set[0] - 1] = q.answer;
        }
        Ok(Move::Output(self.f.evaluate(&x)?))
    }
}

/// Answers truthfully for a concrete input.
pub struct TruthfulResponder {
    x: Vec<bool>,
}

impl TruthfulResponder {
    pub fn new(x: Vec<bool>) -> Self {
        TruthfulResponder { x }
    }
}

impl Responder for TruthfulResponder {
    fn arity(&self) -> usize {
        self.x.len()
    }

    fn answer(&mut self, set: &[usize]) -> Result<bool> {
        Ok(set.iter().all(|&v| self.x[v - 1]))
    }
}
