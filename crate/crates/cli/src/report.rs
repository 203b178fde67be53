//! Claim reports and their export formats.

use std::collections::BTreeMap;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use bfc_core::Config;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    /// A sampled check of a universally-quantified bound found no violation;
    /// this is deliberately weaker than Pass.
    NoCounterexample,
    /// A solver cap was exceeded; the claim was not evaluated.
    Skipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, trials: u64 },
}

impl Mode {
    fn label(&self) -> String {
        match self {
            Mode::Exhaustive => "exhaustive".into(),
            Mode::Sampled { seed, trials } => format!("sampled(seed={seed},trials={trials})"),
        }
    }
}

/// One verified claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub paper_ref: String,
    pub params: BTreeMap<String, String>,
    pub expected: String,
    pub observed: String,
    pub status: Status,
    pub mode: Mode,
    pub runtime_ms: u64,
}

/// The full document emitted by `verify`: the effective configuration and
/// seed, followed by the sorted reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub config: Config,
    pub seed: u64,
    pub reports: Vec<ClaimReport>,
}

/// Stable order: claim id, then the flattened parameter map.
pub fn sort_reports(reports: &mut [ClaimReport]) {
    reports.sort_by(|a, b| {
        a.claim_id
            .cmp(&b.claim_id)
            .then_with(|| a.params.cmp(&b.params))
    });
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

const COLUMNS: [&str; 8] = [
    "claim_id",
    "paper_ref",
    "params",
    "expected",
    "observed",
    "status",
    "mode",
    "runtime_ms",
];

fn flatten_params(params: &BTreeMap<String, String>) -> String {
    params
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn row(r: &ClaimReport) -> [String; 8] {
    [
        r.claim_id.clone(),
        r.paper_ref.clone(),
        flatten_params(&r.params),
        r.expected.clone(),
        r.observed.clone(),
        format!("{:?}", r.status),
        r.mode.label(),
        r.runtime_ms.to_string(),
    ]
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub fn to_csv(reports: &[ClaimReport]) -> String {
    let mut out = COLUMNS.join(",");
    out.push('\n');
    for r in reports {
        let cells: Vec<String> = row(r).iter().map(|f| csv_escape(f)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn to_markdown(reports: &[ClaimReport]) -> String {
    let mut out = format!("| {} |\n", COLUMNS.join(" | "));
    out.push_str(&format!("|{}\n", " --- |".repeat(COLUMNS.len())));
    for r in reports {
        let cells: Vec<String> = row(r)
            .iter()
            .map(|f| f.replace('|', "\\|"))
            .collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out
}

/// Renders a document: JSON is lossless, CSV and markdown flatten the
/// report rows.
pub fn export(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => to_csv(&doc.reports),
        Format::Markdown => to_markdown(&doc.reports),
    }
}
