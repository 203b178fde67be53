use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use bfc_cli::report::{export, Format, ReportDocument, Status};
use bfc_cli::suites::{run_suites, SUITE_IDS};
use bfc_cli::load_config;
use bfc_core::condense::{max_measure_over_restrictions, CondensationQuery, SearchMode};
use bfc_core::constructions::parse_family;
use bfc_core::games::{
    adversary_game_value, dichotomy_analysis, exhaustive_small_search, play, CellProbeQuerier,
    CheatsheetAdversary, PrefixQuerier, Querier, Responder, SweepQuerier, TribesAdversary,
    TribesAndStrategy, TruthfulResponder,
};
use bfc_core::constructions::tribes;
use bfc_core::measures::{self, MeasureKind, ValueTag};
use bfc_core::{Config, Restriction, StructuredFunction};

#[derive(Parser)]
#[command(
    name = "bfclab",
    version,
    about = "Exact Boolean function complexity laboratory"
)]
struct Cli {
    /// Configuration file (TOML); BFCLAB_CONFIG is used when absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for sampled checks; defaults to the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for suite execution.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Compute a complexity measure of a function family.
    Measure {
        /// Family literal, e.g. rub:2,2 | modrub:2,2,4 | tribes:3 | cs:tribes:2,2
        #[arg(long)]
        family: String,
        /// Measure name, e.g. sensitivity | bs | cert | depth | zerodepth |
        /// anddepth | sparsity | degree
        #[arg(long)]
        measure: String,
        /// Input-value restriction: all | zeros | ones
        #[arg(long, default_value = "all")]
        tag: String,
        /// Evaluate at a single input (bit string, variable 1 first) instead
        /// of aggregating.
        #[arg(long)]
        at: Option<String>,
    },
    /// Materialize a family to a truth-table file.
    Build {
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Restrict a family and materialize the result.
    Restrict {
        #[arg(long)]
        family: String,
        /// Restriction literal over {0,1,*}, variable 1 first.
        #[arg(long)]
        restriction: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximize a measure over restrictions with a fixed free-variable count.
    Condense {
        #[arg(long)]
        family: String,
        #[arg(long)]
        measure: String,
        #[arg(long, default_value = "all")]
        tag: String,
        /// Number of free variables.
        #[arg(long)]
        free: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Samples drawn in sample mode.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
    },
    /// Run claim suites and emit a report document.
    Verify {
        /// Suite id; repeat for several, omit for the full catalog.
        #[arg(long)]
        suite: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit with status 3 if any claim was skipped for capacity.
        #[arg(long)]
        strict: bool,
    },
    /// Play a query game and emit the transcript.
    Game {
        #[arg(long, value_enum)]
        kind: GameKind,
        #[arg(long)]
        n: usize,
        /// Cheat-sheet address bits (cheatsheet kind only).
        #[arg(long)]
        c: Option<usize>,
        #[arg(long, value_enum)]
        querier: QuerierArg,
        /// Play against a truthful responder on this input instead of the
        /// adversary (bit string, variable 1 first).
        #[arg(long)]
        input: Option<String>,
        /// Write the transcript JSON here as well as stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Re-render a report document produced by `verify`.
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GameKind {
    Tribes,
    Cheatsheet,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum QuerierArg {
    /// Read every bit, then output.
    Greedy,
    /// The constructive strategy from the source analysis.
    Paper,
    /// Exhaustive bounded-depth search certifying the lower bound.
    Exhaustive,
}

/// Errors that should exit with the usage/config status.
#[derive(Debug)]
struct UsageError(String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(UsageError(msg.into()))
}

fn parse_tag(s: &str) -> anyhow::Result<ValueTag> {
    match s {
        "all" => Ok(ValueTag::All),
        "zeros" | "0" => Ok(ValueTag::OnZeros),
        "ones" | "1" => Ok(ValueTag::OnOnes),
        other => Err(usage(format!("unknown tag {other:?} (all | zeros | ones)"))),
    }
}

fn parse_bits(s: &str, arity: usize) -> anyhow::Result<Vec<bool>> {
    if s.len() != arity {
        return Err(usage(format!("expected {arity} bits, got {}", s.len())));
    }
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(usage(format!("invalid bit {other:?}"))),
        })
        .collect()
}

fn emit(out: Option<&PathBuf>, content: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn cmd_measure(
    cfg: &Config,
    family: &str,
    measure: &str,
    tag: &str,
    at: Option<&str>,
) -> anyhow::Result<()> {
    let f = parse_family(family, cfg)?;
    let kind = MeasureKind::parse(measure)?;
    let tag = parse_tag(tag)?;
    let value = match at {
        None => {
            let value = measures::measure_of(&f, kind, tag, cfg)?;
            json!({
                "family": f.descriptor(),
                "measure": kind.name(),
                "tag": format!("{tag:?}"),
                "value": value,
            })
        }
        Some(bits) => {
            let x = parse_bits(bits, f.arity())?;
            match kind {
                MeasureKind::Sensitivity => {
                    let v = measures::sensitivity_at(&f, &x)?;
                    json!({"family": f.descriptor(), "measure": kind.name(), "at": bits, "value": v})
                }
                MeasureKind::BlockSensitivity => {
                    let (v, family_witness) = measures::block_sensitivity_at(&f, &x, cfg)?;
                    json!({
                        "family": f.descriptor(), "measure": kind.name(), "at": bits,
                        "value": v, "blocks": family_witness.blocks,
                    })
                }
                MeasureKind::Certificate => {
                    let (v, witness) = measures::certificate_at(&f, &x, cfg)?;
                    json!({
                        "family": f.descriptor(), "measure": kind.name(), "at": bits,
                        "value": v, "positions": witness.iter().map(|p| p + 1).collect::<Vec<_>>(),
                    })
                }
                other => {
                    return Err(usage(format!(
                        "measure {} has no pointwise variant",
                        other.name()
                    )))
                }
            }
        }
    };
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(())
}

fn cmd_condense(
    cfg: &Config,
    family: &str,
    measure: &str,
    tag: &str,
    free: usize,
    mode: ModeArg,
    trials: u64,
    seed: u64,
) -> anyhow::Result<()> {
    let f = parse_family(family, cfg)?;
    let query = CondensationQuery {
        measure: MeasureKind::parse(measure)?,
        tag: parse_tag(tag)?,
        free_budget: free,
        mode: match mode {
            ModeArg::Exhaustive => SearchMode::Exhaustive,
            ModeArg::Sample => SearchMode::Sample { seed, trials },
        },
    };
    let outcome = max_measure_over_restrictions(&f, &query, cfg)?;
    let doc = json!({
        "family": f.descriptor(),
        "measure": query.measure.name(),
        "free": free,
        "value": outcome.value,
        "witness": outcome.witness.to_string(),
        "exact": outcome.exact,
    });
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(())
}

fn cmd_verify(
    cfg: &Config,
    seed: u64,
    suites: &[String],
    format: Format,
    out: Option<&PathBuf>,
    strict: bool,
) -> anyhow::Result<u8> {
    let ids: Vec<String> = if suites.is_empty() {
        SUITE_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        suites.to_vec()
    };
    let reports = run_suites(&ids, cfg, seed).map_err(|e| usage(e.to_string()))?;
    let any_fail = reports.iter().any(|r| r.status == Status::Fail);
    let any_skip = reports.iter().any(|r| r.status == Status::Skipped);
    let doc = ReportDocument {
        config: cfg.clone(),
        seed,
        reports,
    };
    emit(out, &export(&doc, format))?;
    Ok(if any_fail {
        1
    } else if strict && any_skip {
        3
    } else {
        0
    })
}

fn cmd_game(
    cfg: &Config,
    kind: GameKind,
    n: usize,
    c: Option<usize>,
    querier: QuerierArg,
    input: Option<&str>,
    emit_path: Option<&PathBuf>,
) -> anyhow::Result<()> {
    let doc = match kind {
        GameKind::Tribes => {
            if let QuerierArg::Exhaustive = querier {
                let report = adversary_game_value(n)?;
                json!({
                    "kind": "tribes", "n": n,
                    "game_value": report.value,
                    "states_certified": report.states_certified,
                })
            } else {
                let f = tribes(n);
                let mut q: Box<dyn Querier> = match querier {
                    QuerierArg::Paper => Box::new(TribesAndStrategy::new(n)),
                    QuerierArg::Greedy => Box::new(SweepQuerier::new(f.clone())),
                    QuerierArg::Exhaustive => unreachable!(),
                };
                let mut responder: Box<dyn Responder> = match input {
                    Some(bits) => {
                        Box::new(TruthfulResponder::new(parse_bits(bits, f.arity())?))
                    }
                    None => Box::new(TribesAdversary::new(n)),
                };
                let t = play(q.as_mut(), responder.as_mut(), f.arity() + 1)?;
                serde_json::to_value(&t)?
            }
        }
        GameKind::Cheatsheet => {
            let c = c.ok_or_else(|| usage("--c is required for the cheatsheet game"))?;
            if let QuerierArg::Exhaustive = querier {
                let depth = (n * n - 1).min(3);
                let sequences = exhaustive_small_search(n, c, depth, cfg)?;
                json!({
                    "kind": "cheatsheet", "n": n, "c": c, "depth": depth,
                    "sequences_certified": sequences,
                })
            } else {
                let mut adv = CheatsheetAdversary::new(n, c, cfg)?;
                let f = StructuredFunction::CheatSheet(Box::new(adv.spec().clone()));
                let mut q: Box<dyn Querier> = match querier {
                    QuerierArg::Greedy => Box::new(SweepQuerier::new(f.clone())),
                    QuerierArg::Paper => Box::new(CellProbeQuerier::new(adv.spec())),
                    QuerierArg::Exhaustive => Box::new(PrefixQuerier::new(0)),
                };
                let t = match input {
                    Some(bits) => {
                        let mut responder =
                            TruthfulResponder::new(parse_bits(bits, f.arity())?);
                        play(q.as_mut(), &mut responder, f.arity() + 1)?
                    }
                    None => {
                        let t = play(q.as_mut(), &mut adv, f.arity() + 1)?;
                        let outcome = dichotomy_analysis(&adv, cfg)?;
                        let mut v = serde_json::to_value(&t)?;
                        v["dichotomy"] = match outcome {
                            bfc_core::games::DichotomyOutcome::ManyCopyQueries {
                                copy_queries,
                            } => json!({"arm": "copy-queries", "copy_queries": copy_queries}),
                            bfc_core::games::DichotomyOutcome::Flippable { cell, .. } => {
                                json!({"arm": "flippable", "cell": cell})
                            }
                        };
                        let content = format!("{}\n", serde_json::to_string_pretty(&v)?);
                        if let Some(path) = emit_path {
                            std::fs::write(path, &content)?;
                        }
                        print!("{content}");
                        return Ok(());
                    }
                };
                serde_json::to_value(&t)?
            }
        }
    };
    let content = format!("{}\n", serde_json::to_string_pretty(&doc)?);
    if let Some(path) = emit_path {
        std::fs::write(path, &content)?;
    }
    print!("{content}");
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let cfg = load_config(cli.config.as_deref()).map_err(|e| usage(format!("{e:#}")))?;
    let seed = cli.seed.unwrap_or(cfg.default_seed);
    if cli.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
        .ok();

    match cli.command {
        Commands::Measure {
            family,
            measure,
            tag,
            at,
        } => {
            cmd_measure(&cfg, &family, &measure, &tag, at.as_deref())?;
            Ok(0)
        }
        Commands::Build { family, out } => {
            let f = parse_family(&family, &cfg)?;
            let table = f.materialize(cfg.dense_cap)?;
            emit(out.as_ref(), &table.to_text())?;
            Ok(0)
        }
        Commands::Restrict {
            family,
            restriction,
            out,
        } => {
            let f = parse_family(&family, &cfg)?;
            let rho = Restriction::parse(&restriction)?;
            let restricted = f.restrict(rho)?;
            let table = restricted.materialize(cfg.dense_cap)?;
            emit(out.as_ref(), &table.to_text())?;
            Ok(0)
        }
        Commands::Condense {
            family,
            measure,
            tag,
            free,
            mode,
            trials,
        } => {
            cmd_condense(&cfg, &family, &measure, &tag, free, mode, trials, seed)?;
            Ok(0)
        }
        Commands::Verify {
            suite,
            format,
            out,
            strict,
        } => cmd_verify(&cfg, seed, &suite, format, out.as_ref(), strict),
        Commands::Game {
            kind,
            n,
            c,
            querier,
            input,
            emit,
        } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            cmd_game(&cfg, kind, n, c, querier, input.as_deref(), emit.as_ref())?;
            Ok(0)
        }
        Commands::Export { input, format, out } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let doc: ReportDocument = serde_json::from_str(&text)
                .map_err(|e| usage(format!("{}: {e}", input.display())))?;
            emit(out.as_ref(), &export(&doc, format))?;
            Ok(0)
        }
    }
}

fn classify(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.downcast_ref::<UsageError>().is_some() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<bfc_core::Error>() {
            return match e {
                bfc_core::Error::Config(_) | bfc_core::Error::Parse(_) => 2,
                _ => 1,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(classify(&err))
        }
    }
}
