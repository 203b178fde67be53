//! Exact complexity measures with explicit solver caps.
//!
//! Every solver here is exact; exceeding a cap is an error, never a silent
//! approximation. Table-level entry points (`*_table`) are provided for hot
//! loops that already hold a materialized table.

mod andtree;
mod blocks;
mod certificate;
mod depth;
mod fourier;
mod sensitivity;

pub use andtree::{
    and_dt_depth_bounds, and_dt_depth_exact, and_dt_depth_exact_table, or_dt_depth_exact,
    or_dt_depth_exact_table, verify_and_tree, AndDecisionTree, AndNode,
};
pub use blocks::{
    block_sensitivity, block_sensitivity_at, block_sensitivity_at_table,
    block_sensitivity_of_table, BlockFamily,
};
pub use certificate::{
    certificate, certificate_at, certificate_at_table, certificate_of_table,
};
pub use depth::{
    dt_depth, dt_depth_table, one_depth, one_depth_table, zero_depth, zero_depth_table,
};
pub use fourier::{degree, degree_table, fourier_sparsity, fourier_sparsity_table};
pub use sensitivity::{sensitivity, sensitivity_at, sensitivity_of_table};

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::function::StructuredFunction;
use crate::table::DenseTruthTable;

/// Which inputs an aggregate measure ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ValueTag {
    /// Maximum over all inputs.
    All,
    /// Maximum over inputs where the function is 0 (the subscript-0 variant).
    OnZeros,
    /// Maximum over inputs where the function is 1 (the subscript-1 variant).
    OnOnes,
}

impl ValueTag {
    pub fn admits(self, value: bool) -> bool {
        match self {
            ValueTag::All => true,
            ValueTag::OnZeros => !value,
            ValueTag::OnOnes => value,
        }
    }
}

/// The measures computed by this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasureKind {
    Sensitivity,
    BlockSensitivity,
    Certificate,
    DTDepth,
    ZeroDepth,
    OneDepth,
    AndDTDepth,
    OrDTDepth,
    FourierSparsity,
    Degree,
}

impl MeasureKind {
    /// Value-restriction tags apply only to sensitivity, block sensitivity
    /// and certificate complexity.
    pub fn supports_tag(self) -> bool {
        matches!(
            self,
            MeasureKind::Sensitivity | MeasureKind::BlockSensitivity | MeasureKind::Certificate
        )
    }

    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "sensitivity" | "s" => MeasureKind::Sensitivity,
            "bs" | "block-sensitivity" => MeasureKind::BlockSensitivity,
            "cert" | "certificate" | "c" => MeasureKind::Certificate,
            "depth" | "d" => MeasureKind::DTDepth,
            "zerodepth" | "dqc0" => MeasureKind::ZeroDepth,
            "onedepth" | "dqc1" => MeasureKind::OneDepth,
            "anddepth" | "dqcand" => MeasureKind::AndDTDepth,
            "ordepth" | "dqcor" => MeasureKind::OrDTDepth,
            "sparsity" | "fourier" => MeasureKind::FourierSparsity,
            "degree" | "deg" => MeasureKind::Degree,
            other => return Err(Error::Parse(format!("unknown measure {other:?}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::Sensitivity => "sensitivity",
            MeasureKind::BlockSensitivity => "bs",
            MeasureKind::Certificate => "cert",
            MeasureKind::DTDepth => "depth",
            MeasureKind::ZeroDepth => "zerodepth",
            MeasureKind::OneDepth => "onedepth",
            MeasureKind::AndDTDepth => "anddepth",
            MeasureKind::OrDTDepth => "ordepth",
            MeasureKind::FourierSparsity => "sparsity",
            MeasureKind::Degree => "degree",
        }
    }
}

pub(crate) fn check_cap(arity: usize, cap: usize, what: &'static str) -> Result<()> {
    if arity > cap {
        return Err(Error::Capacity {
            what,
            required: arity as u128,
            cap: cap as u128,
        });
    }
    Ok(())
}

pub(crate) fn materialize_for(
    f: &StructuredFunction,
    cap: usize,
    what: &'static str,
    cfg: &Config,
) -> Result<DenseTruthTable> {
    check_cap(f.arity(), cap, what)?;
    f.materialize(cfg.dense_cap.max(cap))
}

/// Computes a measure's aggregate value. Depth-style measures reject
/// value-restriction tags.
pub fn measure_of(
    f: &StructuredFunction,
    kind: MeasureKind,
    tag: ValueTag,
    cfg: &Config,
) -> Result<u64> {
    if tag != ValueTag::All && !kind.supports_tag() {
        return Err(Error::Config(format!(
            "measure {} does not take a value-restriction tag",
            kind.name()
        )));
    }
    match kind {
        MeasureKind::Sensitivity => sensitivity(f, tag, cfg),
        MeasureKind::BlockSensitivity => block_sensitivity(f, tag, cfg),
        MeasureKind::Certificate => certificate(f, tag, cfg),
        MeasureKind::DTDepth => dt_depth(f, cfg),
        MeasureKind::ZeroDepth => zero_depth(f, cfg),
        MeasureKind::OneDepth => one_depth(f, cfg),
        MeasureKind::AndDTDepth => and_dt_depth_exact(f, cfg).map(|(d, _)| d),
        MeasureKind::OrDTDepth => or_dt_depth_exact(f, cfg),
        MeasureKind::FourierSparsity => fourier_sparsity(f, cfg),
        MeasureKind::Degree => degree(f, cfg),
    }
}

/// Table-level dispatcher used by restriction search.
pub fn measure_of_table(
    table: &DenseTruthTable,
    kind: MeasureKind,
    tag: ValueTag,
    cfg: &Config,
) -> Result<u64> {
    measure_of(
        &StructuredFunction::Dense(table.clone()),
        kind,
        tag,
        cfg,
    )
}
