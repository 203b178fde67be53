//! Restriction-space search: condensation profiles, the exhaustive lemma
//! checks for the Rubinstein family, and the optimality-exponent analysis.

use num_rational::Ratio;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::constructions::{modified_rubinstein, rubinstein_base};
use crate::error::{Error, Result};
use crate::function::StructuredFunction;
use crate::measures::{self, MeasureKind, ValueTag};
use crate::restriction::{
    enumerate_all_restrictions, enumerate_restrictions, restriction_count, Cell, Restriction,
};

/// How the restriction space is traversed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchMode {
    Exhaustive,
    Sample { seed: u64, trials: u64 },
}

/// A restriction-maximization query: maximize `measure(f|rho)` over
/// restrictions with exactly `free_budget` free variables.
#[derive(Debug, Clone)]
pub struct CondensationQuery {
    pub measure: MeasureKind,
    pub tag: ValueTag,
    pub free_budget: usize,
    pub mode: SearchMode,
}

/// Search result. `exact` is true only for exhaustive searches; sampled
/// results are lower bounds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub value: u64,
    pub witness: Restriction,
    pub mode: SearchMode,
    pub exact: bool,
}

fn measure_restricted(
    f: &StructuredFunction,
    rho: &Restriction,
    measure: MeasureKind,
    tag: ValueTag,
    cfg: &Config,
) -> Result<u64> {
    let restricted = f.restrict(rho.clone())?;
    // Constant restrictions contribute measure 0; the structured constancy
    // rule avoids materializing when it applies.
    if let Ok(c) = restricted.is_constant(cfg.dense_cap) {
        if c.is_constant() {
            return Ok(0);
        }
    }
    measures::measure_of(&restricted, measure, tag, cfg)
}

fn random_restriction<R: Rng>(arity: usize, free_budget: usize, rng: &mut R) -> Restriction {
    let mut positions: Vec<usize> = (0..arity).collect();
    positions.shuffle(rng);
    let free: std::collections::HashSet<usize> =
        positions[..free_budget].iter().copied().collect();
    let cells = (0..arity)
        .map(|i| {
            if free.contains(&i) {
                Cell::Free
            } else if rng.gen::<bool>() {
                Cell::One
            } else {
                Cell::Zero
            }
        })
        .collect();
    Restriction::new(cells)
}

/// Maximizes `measure(f|rho)` over restrictions with exactly
/// `query.free_budget` free variables.
///
/// Exhaustive mode returns the exact maximum with the first witness in
/// enumeration order; sample mode returns a seeded lower bound.
pub fn max_measure_over_restrictions(
    f: &StructuredFunction,
    query: &CondensationQuery,
    cfg: &Config,
) -> Result<SearchOutcome> {
    let arity = f.arity();
    if query.free_budget > arity {
        return Err(Error::ShapeMismatch {
            expected: arity,
            got: query.free_budget,
        });
    }
    let mut best: Option<(u64, Restriction)> = None;
    match query.mode {
        SearchMode::Exhaustive => {
            for rho in enumerate_restrictions(arity, query.free_budget, cfg.enumeration_budget)? {
                let value = measure_restricted(f, &rho, query.measure, query.tag, cfg)?;
                if best.as_ref().is_none_or(|(v, _)| value > *v) {
                    best = Some((value, rho));
                }
            }
        }
        SearchMode::Sample { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let rho = random_restriction(arity, query.free_budget, &mut rng);
                let value = measure_restricted(f, &rho, query.measure, query.tag, cfg)?;
                if best.as_ref().is_none_or(|(v, _)| value > *v) {
                    best = Some((value, rho));
                }
            }
        }
    }
    let (value, witness) = best.expect("at least one restriction examined");
    // Re-check the witness from scratch.
    let recheck = measure_restricted(f, &witness, query.measure, query.tag, cfg)?;
    debug_assert_eq!(recheck, value);
    if recheck != value {
        return Err(Error::Protocol(format!(
            "witness re-check mismatch: {recheck} vs {value}"
        )));
    }
    Ok(SearchOutcome {
        value,
        witness,
        mode: query.mode,
        exact: matches!(query.mode, SearchMode::Exhaustive),
    })
}

/// One row of a condensation profile; failed rows carry the error instead
/// of being dropped.
#[derive(Debug)]
pub struct ProfileRow {
    pub free_budget: usize,
    pub outcome: Result<SearchOutcome>,
}

/// Tabulates `max measure(f|rho)` across free budgets.
pub fn condensation_profile(
    f: &StructuredFunction,
    measure: MeasureKind,
    tag: ValueTag,
    budgets: &[usize],
    mode: SearchMode,
    cfg: &Config,
) -> Vec<ProfileRow> {
    budgets
        .iter()
        .map(|&free_budget| ProfileRow {
            free_budget,
            outcome: max_measure_over_restrictions(
                f,
                &CondensationQuery {
                    measure,
                    tag,
                    free_budget,
                    mode,
                },
                cfg,
            ),
        })
        .collect()
}

/// A bound violation found during an exhaustive lemma check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundViolation {
    pub rho: Restriction,
    pub observed: u64,
    pub bound: String,
}

/// Outcome of checking every restriction of the Rubinstein base against the
/// restricted certificate/block-sensitivity bounds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LemmaCheckReport {
    pub restrictions_checked: u64,
    pub non_constant: u64,
    pub violations: Vec<BoundViolation>,
}

/// Checks, for every non-constant restriction `rho` of the base with `t`
/// free variables: `C0(g|rho) <= max(2, t/b)` and `bs0(g|rho) <= max(1, t/b)`.
/// Non-integer bounds are compared exactly.
pub fn verify_base_restriction_lemmas(
    block_size: usize,
    num_blocks: usize,
    cfg: &Config,
) -> Result<LemmaCheckReport> {
    let g = rubinstein_base(block_size, num_blocks);
    let arity = g.arity();
    let mut report = LemmaCheckReport {
        restrictions_checked: 0,
        non_constant: 0,
        violations: Vec::new(),
    };
    for rho in enumerate_all_restrictions(arity, cfg.enumeration_budget)? {
        report.restrictions_checked += 1;
        let restricted = g.restrict(rho.clone())?;
        if restricted.is_constant(cfg.dense_cap)?.is_constant() {
            continue;
        }
        report.non_constant += 1;
        let free = rho.free_count() as u64;
        let b = block_size as u64;
        let c0 = measures::certificate(&restricted, ValueTag::OnZeros, cfg)?;
        if !(c0 <= 2 || c0 * b <= free) {
            report.violations.push(BoundViolation {
                rho: rho.clone(),
                observed: c0,
                bound: format!("C0 <= max(2, {free}/{b})"),
            });
        }
        let bs0 = measures::block_sensitivity(&restricted, ValueTag::OnZeros, cfg)?;
        if !(bs0 <= 1 || bs0 * b <= free) {
            report.violations.push(BoundViolation {
                rho,
                observed: bs0,
                bound: format!("bs0 <= max(1, {free}/{b})"),
            });
        }
    }
    Ok(report)
}

/// Outcome of an incondensability bound check over restrictions of the
/// modified Rubinstein function.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IncondReport {
    pub restrictions_checked: u64,
    pub max_observed: u64,
    pub bound_description: String,
    pub violations: Vec<BoundViolation>,
    pub exhaustive: bool,
}

/// Checks `measure(f|rho) <= max(block*blocks, t/block + coef*copies)` for
/// every examined restriction with exactly `free_budget` free variables,
/// where `coef` is 1 for block sensitivity and 2 for certificate complexity
/// (the per-case bounds of the restricted-function analysis with explicit
/// constant 1).
pub fn verify_incondensability(
    block_size: usize,
    num_blocks: usize,
    copies: usize,
    free_budget: usize,
    measure: MeasureKind,
    mode: SearchMode,
    cfg: &Config,
) -> Result<IncondReport> {
    let coef: u64 = match measure {
        MeasureKind::BlockSensitivity => 1,
        MeasureKind::Certificate => 2,
        other => {
            return Err(Error::Config(format!(
                "incondensability check supports bs and cert, not {}",
                other.name()
            )))
        }
    };
    let f = modified_rubinstein(block_size, num_blocks, copies);
    let arity = f.arity();
    let b = block_size as u64;
    let value_one_side = (block_size * num_blocks) as u64;
    let t = free_budget as u64;
    let r = copies as u64;
    // v <= max(b*n, t/b + coef*r), rationals compared by cross-multiplying.
    let within = |v: u64| v <= value_one_side || v.saturating_sub(coef * r) * b <= t;

    let mut report = IncondReport {
        restrictions_checked: 0,
        max_observed: 0,
        bound_description: format!(
            "{} <= max({value_one_side}, {t}/{b} + {coef}*{r})",
            measure.name()
        ),
        violations: Vec::new(),
        exhaustive: matches!(mode, SearchMode::Exhaustive),
    };
    let mut check = |rho: Restriction| -> Result<()> {
        report.restrictions_checked += 1;
        let value = measure_restricted(&f, &rho, measure, ValueTag::All, cfg)?;
        report.max_observed = report.max_observed.max(value);
        if !within(value) {
            report.violations.push(BoundViolation {
                rho,
                observed: value,
                bound: report.bound_description.clone(),
            });
        }
        Ok(())
    };
    match mode {
        SearchMode::Exhaustive => {
            for rho in enumerate_restrictions(arity, free_budget, cfg.enumeration_budget)? {
                check(rho)?;
            }
        }
        SearchMode::Sample { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                check(random_restriction(arity, free_budget, &mut rng))?;
            }
        }
    }
    Ok(report)
}

/// An exponent pair `(alpha, beta)` parameterizing block size `n^alpha` and
/// copy count `n^beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalityPoint {
    pub alpha: Ratio<i64>,
    pub beta: Ratio<i64>,
}

/// The condensation-gap exponent
/// `max(alpha+1, beta+1) / max(1, beta, alpha+1, beta+1-alpha)`,
/// in exact rational arithmetic.
pub fn optimality_exponent(p: &OptimalityPoint) -> Ratio<i64> {
    let one: Ratio<i64> = Ratio::one();
    let numerator = (p.alpha + one).max(p.beta + one);
    let denominator = one
        .max(p.beta)
        .max(p.alpha + one)
        .max(p.beta + one - p.alpha);
    numerator / denominator
}

/// Grid search of the exponent over `[0, max_exponent]^2` with the given
/// step. Returns every maximizing point and the maximum value.
pub fn optimality_grid(
    step: Ratio<i64>,
    max_exponent: Ratio<i64>,
) -> (Vec<OptimalityPoint>, Ratio<i64>) {
    assert!(step > Ratio::from_integer(0));
    let mut grid = Vec::new();
    let mut a = Ratio::from_integer(0);
    while a <= max_exponent {
        let mut b = Ratio::from_integer(0);
        while b <= max_exponent {
            grid.push(OptimalityPoint { alpha: a, beta: b });
            b += step;
        }
        a += step;
    }
    let mut best_value = Ratio::from_integer(0);
    let mut argmax = Vec::new();
    for p in grid {
        let v = optimality_exponent(&p);
        if v > best_value {
            best_value = v;
            argmax = vec![p];
        } else if v == best_value {
            argmax.push(p);
        }
    }
    (argmax, best_value)
}

/// Exhaustively searches restrictions with at most `budget` free variables
/// for one preserving the Fourier sparsity of `f`. Returns the first witness
/// in deterministic order (ascending free count, then enumeration order).
pub fn sparsity_condensation_search(
    f: &StructuredFunction,
    budget: usize,
    cfg: &Config,
) -> Result<Option<Restriction>> {
    let arity = f.arity();
    if budget > arity {
        return Err(Error::ShapeMismatch {
            expected: arity,
            got: budget,
        });
    }
    let target = measures::fourier_sparsity(f, cfg)?;
    let total: u128 = (0..=budget).map(|t| restriction_count(arity, t)).sum();
    if total > cfg.enumeration_budget as u128 {
        return Err(Error::Capacity {
            what: "restriction enumeration",
            required: total,
            cap: cfg.enumeration_budget as u128,
        });
    }
    for free in 0..=budget {
        for rho in enumerate_restrictions(arity, free, cfg.enumeration_budget)? {
            let restricted = f.restrict(rho.clone())?;
            if measures::fourier_sparsity(&restricted, cfg)? == target {
                return Ok(Some(rho));
            }
        }
    }
    Ok(None)
}
