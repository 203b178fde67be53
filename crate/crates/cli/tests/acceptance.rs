//! The acceptance gate: one test per criterion, each printing a single
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see every line.

use num_rational::Ratio;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use bfc_cli::report::{sort_reports, Status};
use bfc_cli::suites::{run_suite, SUITE_IDS};
use bfc_core::condense::{
    optimality_grid, verify_base_restriction_lemmas, verify_incondensability, OptimalityPoint,
    SearchMode,
};
use bfc_core::constructions::{modified_rubinstein, rubinstein_base, tribes};
use bfc_core::games::{
    adversary_game_value, dichotomy_analysis, exhaustive_small_search, play,
    verify_forcing_all_orders, CellProbeQuerier, CheatsheetAdversary, DichotomyOutcome,
    PrefixQuerier, Querier, SweepQuerier, TribesAndStrategy, TruthfulResponder,
};
use bfc_core::measures::{
    and_dt_depth_exact, and_dt_depth_exact_table, block_sensitivity, block_sensitivity_at,
    block_sensitivity_of_table, certificate, certificate_at, certificate_of_table,
    dt_depth_table, fourier_sparsity_table, sensitivity_of_table, zero_depth, zero_depth_table,
    MeasureKind, ValueTag,
};
use bfc_core::table::index_to_bits;
use bfc_core::{Config, DenseTruthTable, StructuredFunction};

fn conclude(criterion: usize, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {criterion}: {verdict} - {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_01_tribes_zero_depth() {
    let cfg = Config::default();
    let z2 = zero_depth(&tribes(2), &cfg).unwrap();
    let z3 = zero_depth(&tribes(3), &cfg).unwrap();
    conclude(
        1,
        z2 == 3 && z3 == 7,
        &format!("zero-depth of tribes(2) = {z2} (want 3), tribes(3) = {z3} (want 7)"),
    );
}

#[test]
fn criterion_02_adversary_game_value() {
    let v2 = adversary_game_value(2).unwrap();
    let v3 = adversary_game_value(3).unwrap();
    let orders = verify_forcing_all_orders(2).unwrap();
    conclude(
        2,
        v2.value == 3 && v3.value == 7 && orders == 24,
        &format!(
            "game value n=2: {} (want 3), n=3: {} (want 7, {} states certified), \
             all {orders} query orders force 4 queries",
            v2.value, v3.value, v3.states_certified
        ),
    );
}

#[test]
fn criterion_03_and_strategy_replay() {
    let mut ok = true;
    let mut detail = String::new();
    for n in [2usize, 3] {
        let arity = n * n;
        let limit = arity - n + 1;
        let mut worst = 0usize;
        for e in 0..(1usize << arity) {
            let x = index_to_bits(e, arity);
            let mut q = TribesAndStrategy::new(n);
            let mut r = TruthfulResponder::new(x.clone());
            let t = play(&mut q, &mut r, arity + 1).unwrap();
            if t.output != Some(tribes(n).evaluate(&x).unwrap()) || t.queries.len() > limit {
                ok = false;
            }
            worst = worst.max(t.queries.len());
        }
        detail.push_str(&format!("n={n}: worst {worst}/{limit} queries; "));
    }
    conclude(3, ok, &format!("{detail}all outputs correct"));
}

#[test]
fn criterion_04_sandwich_all_four_variable_functions() {
    let cfg = Config::default();
    let mut violations = 0u64;
    for code in 0..(1u32 << 16) {
        let table = DenseTruthTable::from_fn(4, |e| code >> e & 1 == 1);
        let zd = zero_depth_table(&table, &cfg).unwrap();
        let (ad, _) = and_dt_depth_exact_table(&table, &cfg).unwrap();
        if !(zd <= ad && ad <= zd * 3) {
            violations += 1;
        }
    }
    let (t, _) = and_dt_depth_exact(&tribes(2), &cfg).unwrap();
    let zt = zero_depth(&tribes(2), &cfg).unwrap();
    let tribes_ok = zt <= t && t <= zt * 3;
    conclude(
        4,
        violations == 0 && tribes_ok,
        &format!("{violations} violations over 65536 functions; tribes(2) within [{zt}, {}]", zt * 3),
    );
}

#[test]
fn criterion_05_rubinstein_exact_values() {
    let cfg = Config::default();
    let g = rubinstein_base(2, 2);
    let f = modified_rubinstein(2, 2, 4);
    let origin = vec![false; 16];
    let c1 = certificate(&g, ValueTag::OnOnes, &cfg).unwrap();
    let c0 = certificate(&g, ValueTag::OnZeros, &cfg).unwrap();
    let bs0 = block_sensitivity(&g, ValueTag::OnZeros, &cfg).unwrap();
    let (bsf, _) = block_sensitivity_at(&f, &origin, &cfg).unwrap();
    let (cf, _) = certificate_at(&f, &origin, &cfg).unwrap();
    conclude(
        5,
        c1 == 4 && c0 == 2 && bs0 == 2 && bsf == 8 && cf == 8,
        &format!(
            "C1(g)={c1} (want 4), C0(g)={c0} (want 2), bs0(g)={bs0} (want 2), \
             bs(f,0)={bsf} (want 8), C(f,0)={cf} (want 8)"
        ),
    );
}

#[test]
fn criterion_06_restriction_lemmas() {
    let cfg = Config::default();
    let mut ok = true;
    let mut detail = String::new();
    for (b, n) in [(2usize, 2usize), (2, 3), (3, 2)] {
        let report = verify_base_restriction_lemmas(b, n, &cfg).unwrap();
        ok &= report.violations.is_empty()
            && report.restrictions_checked == 3u64.pow((b * n) as u32);
        detail.push_str(&format!(
            "(b={b},n={n}): {} checked, {} violations; ",
            report.restrictions_checked,
            report.violations.len()
        ));
    }
    conclude(6, ok, &detail);
}

#[test]
fn criterion_07_incondensability_bound() {
    let cfg = Config::default();
    let mut ok = true;
    let mut total = 0u64;
    for t in 0..=8usize {
        let report = verify_incondensability(
            2,
            2,
            2,
            t,
            MeasureKind::BlockSensitivity,
            SearchMode::Exhaustive,
            &cfg,
        )
        .unwrap();
        ok &= report.violations.is_empty();
        total += report.restrictions_checked;
    }
    conclude(
        7,
        ok && total == 3u64.pow(8),
        &format!("bs(f|rho) <= max(t/2 + 2, 4) over all {total} restrictions, 0 violations"),
    );
}

#[test]
fn criterion_08_optimality_grid() {
    let (argmax, value) = optimality_grid(Ratio::new(1, 2), Ratio::from_integer(3));
    let ok = value == Ratio::new(3, 2)
        && argmax
            == vec![OptimalityPoint {
                alpha: Ratio::from_integer(1),
                beta: Ratio::from_integer(2),
            }];
    conclude(
        8,
        ok,
        &format!("max {value} attained at {} grid point(s)", argmax.len()),
    );
}

#[test]
fn criterion_09_cheatsheet_dichotomy() {
    let cfg = Config::default();
    let mut arms = Vec::new();
    let mut ok = true;
    let queriers: Vec<(&str, Box<dyn Fn(&CheatsheetAdversary) -> Box<dyn Querier>>)> = vec![
        (
            "sweep",
            Box::new(|adv: &CheatsheetAdversary| {
                Box::new(SweepQuerier::new(StructuredFunction::CheatSheet(Box::new(
                    adv.spec().clone(),
                )))) as Box<dyn Querier>
            }),
        ),
        (
            "cell-probe",
            Box::new(|adv: &CheatsheetAdversary| {
                Box::new(CellProbeQuerier::new(adv.spec())) as Box<dyn Querier>
            }),
        ),
        (
            "prefix",
            Box::new(|_: &CheatsheetAdversary| Box::new(PrefixQuerier::new(3)) as Box<dyn Querier>),
        ),
    ];
    for (name, make) in queriers {
        let mut adv = CheatsheetAdversary::new(2, 2, &cfg).unwrap();
        let mut q = make(&adv);
        play(q.as_mut(), &mut adv, 100).unwrap();
        match dichotomy_analysis(&adv, &cfg) {
            Ok(DichotomyOutcome::ManyCopyQueries { copy_queries }) => {
                arms.push(format!("{name}: {copy_queries} copy queries"));
            }
            Ok(DichotomyOutcome::Flippable { cell, .. }) => {
                arms.push(format!("{name}: cell {cell} flips"));
            }
            Err(e) => {
                arms.push(format!("{name}: {e}"));
                ok = false;
            }
        }
    }
    let sequences = exhaustive_small_search(2, 2, 3, &cfg).unwrap();
    ok &= sequences == 56 * 55 * 54;
    conclude(
        9,
        ok,
        &format!("{}; {sequences} exhaustive depth-3 sequences flippable", arms.join("; ")),
    );
}

#[test]
fn criterion_10_measure_chain_and_monotone() {
    let cfg = Config::default();
    let mut chain_violations = 0u64;
    for code in 0..(1u32 << 16) {
        let table = DenseTruthTable::from_fn(4, |e| code >> e & 1 == 1);
        let s = sensitivity_of_table(&table, ValueTag::All);
        let bs = block_sensitivity_of_table(&table, ValueTag::All, &cfg).unwrap();
        let c = certificate_of_table(&table, ValueTag::All, &cfg).unwrap();
        let d = dt_depth_table(&table, &cfg).unwrap();
        if !(s <= bs && bs <= c && c <= d) {
            chain_violations += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(Config::default().default_seed);
    let mut monotone_violations = 0u64;
    for i in 0..200u64 {
        let arity = 3 + (i % 6) as usize;
        let table = DenseTruthTable::random_monotone(arity, &mut rng);
        let s = sensitivity_of_table(&table, ValueTag::All);
        let bs = block_sensitivity_of_table(&table, ValueTag::All, &cfg).unwrap();
        let c = certificate_of_table(&table, ValueTag::All, &cfg).unwrap();
        if !(s == bs && bs == c) {
            monotone_violations += 1;
        }
    }
    conclude(
        10,
        chain_violations == 0 && monotone_violations == 0,
        &format!(
            "chain: {chain_violations} violations over 65536 functions; \
             monotone collapse: {monotone_violations} violations over 200 samples"
        ),
    );
}

#[test]
fn criterion_11_fourier_sparsity() {
    let mut ok = true;
    for n in 1..=5usize {
        let parity = DenseTruthTable::from_fn(n, |e| e.count_ones() % 2 == 1);
        ok &= fourier_sparsity_table(&parity) == 1;
    }
    ok &= fourier_sparsity_table(&DenseTruthTable::constant(4, true)) == 1;
    ok &= fourier_sparsity_table(&DenseTruthTable::constant(4, false)) == 1;
    let and2 = fourier_sparsity_table(&DenseTruthTable::from_fn(2, |e| e == 3));
    ok &= and2 == 4;
    conclude(
        11,
        ok,
        &format!("parity and constants have sparsity 1; sparsity(AND2) = {and2} (want 4)"),
    );
}

#[test]
fn criterion_12_determinism() {
    let cfg = Config::default();
    let seed = cfg.default_seed;
    let run = || {
        let mut reports = Vec::new();
        for id in SUITE_IDS {
            reports.extend(run_suite(id, &cfg, seed).unwrap());
        }
        sort_reports(&mut reports);
        for r in &mut reports {
            r.runtime_ms = 0;
        }
        serde_json::to_string_pretty(&reports).unwrap()
    };
    let first = run();
    let second = run();
    let parsed: Vec<bfc_cli::report::ClaimReport> = serde_json::from_str(&first).unwrap();
    let all_good = parsed
        .iter()
        .all(|r| matches!(r.status, Status::Pass | Status::NoCounterexample));
    conclude(
        12,
        first == second && all_good,
        &format!(
            "two catalog runs byte-identical (runtime excluded), {} claims, all Pass/NoCounterexample",
            parsed.len()
        ),
    );
}
