//! The explicit function families: Rubinstein-style block functions, TRIBES
//! and its dual, and the cheat-sheet composition.
//!
//! Block indexing convention: block `j` of a Rubinstein base covers the
//! 1-based variables `{j*b+1, ..., j*b+b}` for `j` in `0..n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::StructuredFunction;
use crate::measures;
use crate::restriction::{Cell, Restriction};
use crate::table::{bits_to_index, Constancy, DenseTruthTable};

/// Base Rubinstein function on `block_size * num_blocks` variables: accepts
/// exactly the inputs with one all-ones block and zeros elsewhere, so it has
/// exactly `num_blocks` accepting inputs.
pub fn rubinstein_base(block_size: usize, num_blocks: usize) -> StructuredFunction {
    assert!(block_size >= 1 && num_blocks >= 1);
    StructuredFunction::RubinsteinBase {
        block_size,
        num_blocks,
    }
}

/// OR of `copies` disjoint consecutive copies of the Rubinstein base.
pub fn modified_rubinstein(
    block_size: usize,
    num_blocks: usize,
    copies: usize,
) -> StructuredFunction {
    assert!(block_size >= 1 && num_blocks >= 1 && copies >= 1);
    StructuredFunction::ModifiedRubinstein {
        block_size,
        num_blocks,
        copies,
    }
}

/// AND of `n` ORs over `n` consecutive variables each.
pub fn tribes(n: usize) -> StructuredFunction {
    assert!(n >= 1);
    StructuredFunction::Tribes { n }
}

/// OR of `n` ANDs over `n` consecutive variables each.
pub fn dual_tribes(n: usize) -> StructuredFunction {
    assert!(n >= 1);
    StructuredFunction::DualTribes { n }
}

pub(crate) fn eval_rubinstein_base(block_size: usize, num_blocks: usize, x: &[bool]) -> bool {
    let ones = x.iter().filter(|&&b| b).count();
    if ones != block_size {
        return false;
    }
    (0..num_blocks).any(|j| x[j * block_size..(j + 1) * block_size].iter().all(|&b| b))
}

/// Constancy of a restricted Rubinstein base, decided by pattern analysis
/// instead of a table scan (valid at any arity).
///
/// With at least one free variable, the restriction is non-constant exactly
/// when some accepting completion exists: a block with no fixed zero inside
/// it and no fixed one outside it. Accepting inputs have every bit sensitive,
/// so an accepting completion plus a free flip always yields a rejecting one.
pub fn rubinstein_restricted_constancy(
    block_size: usize,
    num_blocks: usize,
    rho: &Restriction,
) -> Constancy {
    assert_eq!(rho.arity(), block_size * num_blocks);
    if rho.free_count() == 0 {
        let point: Vec<bool> = rho
            .cells()
            .iter()
            .map(|c| matches!(c, Cell::One))
            .collect();
        return if eval_rubinstein_base(block_size, num_blocks, &point) {
            Constancy::Constant1
        } else {
            Constancy::Constant0
        };
    }
    let cells = rho.cells();
    let one_achievable = (0..num_blocks).any(|j| {
        let block = j * block_size..(j + 1) * block_size;
        let zero_inside = cells[block.clone()].iter().any(|c| matches!(c, Cell::Zero));
        let one_outside = cells
            .iter()
            .enumerate()
            .any(|(i, c)| !block.contains(&i) && matches!(c, Cell::One));
        !zero_inside && !one_outside
    });
    if one_achievable {
        Constancy::NonConstant
    } else {
        Constancy::Constant0
    }
}

/// A claimed certificate: a list of (1-based position, bit) entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateClaim {
    pub entries: Vec<(usize, bool)>,
}

/// Checks a certificate claim against a concrete input:
/// true iff every entry agrees with `x` and the base function is constant
/// equal to `claimed_value` on the subcube fixing exactly those positions.
pub fn verify_certificate(
    base: &StructuredFunction,
    x: &[bool],
    claim: &CertificateClaim,
    claimed_value: bool,
    dense_cap: usize,
) -> Result<bool> {
    let table = base.materialize(dense_cap)?;
    if x.len() != table.arity() {
        return Err(Error::ShapeMismatch {
            expected: table.arity(),
            got: x.len(),
        });
    }
    for &(pos, _) in &claim.entries {
        if pos == 0 || pos > table.arity() {
            return Err(Error::MalformedClaim(format!(
                "position {pos} out of range 1..={}",
                table.arity()
            )));
        }
    }
    Ok(verify_claim_on_table(&table, x, claim, claimed_value))
}

/// Claim check against a pre-materialized table; out-of-range positions make
/// the claim fail instead of erroring (the cheat-sheet decode path).
pub(crate) fn verify_claim_on_table(
    table: &DenseTruthTable,
    x: &[bool],
    claim: &CertificateClaim,
    claimed_value: bool,
) -> bool {
    let arity = table.arity();
    let mut fixed_mask = 0usize;
    let mut fixed_vals = 0usize;
    for &(pos, value) in &claim.entries {
        if pos == 0 || pos > arity {
            return false;
        }
        let bit = 1usize << (pos - 1);
        if x[pos - 1] != value {
            return false;
        }
        fixed_mask |= bit;
        if value {
            fixed_vals |= bit;
        }
    }
    for e in 0..(1usize << arity) {
        if e & fixed_mask == fixed_vals && table.get(e) != claimed_value {
            return false;
        }
    }
    true
}

/// Parameters of a cheat-sheet function over a dense base.
///
/// Input layout: `c` copies of the base (N bits each), then `2^c` cells of
/// `c * m` bits each, where `m = cert_size * (ptr_width + 1)`. Each cell
/// holds one claimed certificate per copy; a claim entry is `ptr_width`
/// position bits (0-based, least significant first) followed by one value
/// bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheatSheetSpec {
    base: StructuredFunction,
    base_table: DenseTruthTable,
    address_bits: usize,
    cert_size: usize,
    ptr_width: usize,
}

impl CheatSheetSpec {
    pub fn base(&self) -> &StructuredFunction {
        &self.base
    }

    pub fn base_table(&self) -> &DenseTruthTable {
        &self.base_table
    }

    /// Number of base copies, also the address width in cells.
    pub fn address_bits(&self) -> usize {
        self.address_bits
    }

    pub fn cert_size(&self) -> usize {
        self.cert_size
    }

    pub fn ptr_width(&self) -> usize {
        self.ptr_width
    }

    /// Bits per certificate claim.
    pub fn bits_per_claim(&self) -> usize {
        self.cert_size * (self.ptr_width + 1)
    }

    /// Bits per cheat-sheet cell.
    pub fn cell_bits(&self) -> usize {
        self.address_bits * self.bits_per_claim()
    }

    pub fn num_cells(&self) -> usize {
        1usize << self.address_bits
    }

    pub fn base_arity(&self) -> usize {
        self.base_table.arity()
    }

    /// Total arity: `c * N + 2^c * c * m`.
    pub fn arity(&self) -> usize {
        self.address_bits * self.base_arity() + self.num_cells() * self.cell_bits()
    }

    /// 0-based offset of the first bit of copy `i`.
    pub fn copy_offset(&self, i: usize) -> usize {
        i * self.base_arity()
    }

    /// 0-based offset of the first bit of cell `j`.
    pub fn cell_offset(&self, j: usize) -> usize {
        self.address_bits * self.base_arity() + j * self.cell_bits()
    }

    /// Total number of copy-region bits.
    pub fn copy_region_len(&self) -> usize {
        self.address_bits * self.base_arity()
    }
}

/// Builds the cheat-sheet function over a dense base with `c` address bits.
///
/// The certificate entry count is the exact certificate complexity of the
/// base, computed at construction time.
pub fn cheat_sheet(
    base: StructuredFunction,
    address_bits: usize,
    cfg: &crate::config::Config,
) -> Result<StructuredFunction> {
    if address_bits == 0 {
        return Err(Error::Config("cheat sheet needs at least 1 address bit".into()));
    }
    let base_table = base.materialize(cfg.dense_cap)?;
    let cert_size = measures::certificate_of_table(&base_table, crate::measures::ValueTag::All, cfg)? as usize;
    let n = base_table.arity();
    let ptr_width = if n <= 1 { 0 } else { (usize::BITS - (n - 1).leading_zeros()) as usize };
    debug_assert!(n == 0 || (1usize << ptr_width) >= n);
    Ok(StructuredFunction::CheatSheet(Box::new(CheatSheetSpec {
        base,
        base_table,
        address_bits,
        cert_size,
        ptr_width,
    })))
}

/// Decodes the claims held in one cell, one per copy. Out-of-range decoded
/// positions are kept; they make the claim fail verification.
pub fn decode_cell(spec: &CheatSheetSpec, cell_bits: &[bool]) -> Vec<CertificateClaim> {
    assert_eq!(cell_bits.len(), spec.cell_bits());
    let m = spec.bits_per_claim();
    (0..spec.address_bits)
        .map(|i| {
            let claim_bits = &cell_bits[i * m..(i + 1) * m];
            let entries = (0..spec.cert_size)
                .map(|t| {
                    let entry = &claim_bits[t * (spec.ptr_width + 1)..(t + 1) * (spec.ptr_width + 1)];
                    let pos0 = bits_to_index(&entry[..spec.ptr_width]);
                    (pos0 + 1, entry[spec.ptr_width])
                })
                .collect();
            CertificateClaim { entries }
        })
        .collect()
}

/// Encodes one claim per copy into a cell's bits. Inverse of [`decode_cell`]
/// for in-range positions.
pub fn encode_cell(spec: &CheatSheetSpec, claims: &[CertificateClaim]) -> Result<Vec<bool>> {
    if claims.len() != spec.address_bits {
        return Err(Error::ShapeMismatch {
            expected: spec.address_bits,
            got: claims.len(),
        });
    }
    let mut out = vec![false; spec.cell_bits()];
    let m = spec.bits_per_claim();
    for (i, claim) in claims.iter().enumerate() {
        if claim.entries.len() != spec.cert_size {
            return Err(Error::MalformedClaim(format!(
                "claim must have exactly {} entries, got {}",
                spec.cert_size,
                claim.entries.len()
            )));
        }
        for (t, &(pos, value)) in claim.entries.iter().enumerate() {
            if pos == 0 || pos > spec.base_arity() {
                return Err(Error::MalformedClaim(format!(
                    "position {pos} out of range 1..={}",
                    spec.base_arity()
                )));
            }
            let start = i * m + t * (spec.ptr_width + 1);
            let pos0 = pos - 1;
            for b in 0..spec.ptr_width {
                out[start + b] = (pos0 >> b) & 1 == 1;
            }
            out[start + spec.ptr_width] = value;
        }
    }
    Ok(out)
}

pub(crate) fn eval_cheat_sheet(spec: &CheatSheetSpec, x: &[bool]) -> Result<bool> {
    let n = spec.base_arity();
    let mut address = 0usize;
    let mut copy_values = Vec::with_capacity(spec.address_bits);
    for i in 0..spec.address_bits {
        let copy = &x[spec.copy_offset(i)..spec.copy_offset(i) + n];
        let v = spec.base_table.get(bits_to_index(copy));
        copy_values.push(v);
        if v {
            address |= 1 << i;
        }
    }
    let cell = &x[spec.cell_offset(address)..spec.cell_offset(address) + spec.cell_bits()];
    let claims = decode_cell(spec, cell);
    for (i, claim) in claims.iter().enumerate() {
        let copy = &x[spec.copy_offset(i)..spec.copy_offset(i) + n];
        if !verify_claim_on_table(&spec.base_table, copy, claim, copy_values[i]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds a certificate claim of exactly `cert_size` entries certifying the
/// base's value at `x`, by minimal certificate search plus padding with a
/// repeated entry.
pub fn build_certificate_claim(
    table: &DenseTruthTable,
    x: &[bool],
    cert_size: usize,
    cfg: &crate::config::Config,
) -> Result<CertificateClaim> {
    let (size, positions) = measures::certificate_at_table(table, bits_to_index(x), cfg)?;
    if size as usize > cert_size {
        return Err(Error::MalformedClaim(format!(
            "minimal certificate of size {size} does not fit in {cert_size} entries"
        )));
    }
    let mut entries: Vec<(usize, bool)> = positions
        .iter()
        .map(|&p0| (p0 + 1, x[p0]))
        .collect();
    while entries.len() < cert_size {
        // Pad with a repeated entry; duplicates are consistent by construction.
        let filler = entries.first().copied().unwrap_or((1, x[0]));
        entries.push(filler);
    }
    Ok(CertificateClaim { entries })
}

/// Parses a CLI family literal:
/// `rub:b,n`, `modrub:b,n,r`, `tribes:n`, `dualtribes:n`, `cs:tribes:n,c`.
pub fn parse_family(literal: &str, cfg: &crate::config::Config) -> Result<StructuredFunction> {
    fn nums(s: &str, expect: usize) -> Result<Vec<usize>> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != expect {
            return Err(Error::Parse(format!(
                "expected {expect} comma-separated parameters, got {:?}",
                s
            )));
        }
        parts
            .iter()
            .map(|p| {
                let v: usize = p
                    .trim()
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad parameter {p:?}: {e}")))?;
                if v == 0 {
                    return Err(Error::Parse(format!("parameter must be positive: {p:?}")));
                }
                Ok(v)
            })
            .collect()
    }

    let (family, rest) = literal
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("not a family literal: {literal:?}")))?;
    match family {
        "rub" => {
            let p = nums(rest, 2)?;
            Ok(rubinstein_base(p[0], p[1]))
        }
        "modrub" => {
            let p = nums(rest, 3)?;
            Ok(modified_rubinstein(p[0], p[1], p[2]))
        }
        "tribes" => {
            let p = nums(rest, 1)?;
            Ok(tribes(p[0]))
        }
        "dualtribes" => {
            let p = nums(rest, 1)?;
            Ok(dual_tribes(p[0]))
        }
        "cs" => {
            let inner = rest.strip_prefix("tribes:").ok_or_else(|| {
                Error::Parse(format!("only cs:tribes:n,c is supported, got {literal:?}"))
            })?;
            let p = nums(inner, 2)?;
            cheat_sheet(tribes(p[0]), p[1], cfg)
        }
        other => Err(Error::Parse(format!("unknown family {other:?}"))),
    }
}
