//! Partial assignments over {0, 1, *} and their enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One position of a restriction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cell {
    Zero,
    One,
    Free,
}

/// A partial assignment fixing some variables and leaving the rest free.
///
/// Free variables of the restricted function are renumbered in ascending
/// original-index order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Restriction {
    cells: Vec<Cell>,
}

impl Restriction {
    pub fn new(cells: Vec<Cell>) -> Self {
        Restriction { cells }
    }

    /// The all-free restriction on `arity` variables.
    pub fn all_free(arity: usize) -> Self {
        Restriction {
            cells: vec![Cell::Free; arity],
        }
    }

    pub fn arity(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn free_count(&self) -> usize {
        self.cells.iter().filter(|c| matches!(c, Cell::Free)).count()
    }

    /// Indices of free positions, ascending (0-based).
    pub fn free_positions(&self) -> Vec<usize> {
        self.cells
            .iter()
            .enumerate()
            .filter_map(|(i, c)| matches!(c, Cell::Free).then_some(i))
            .collect()
    }

    /// Expands an assignment `y` of the free variables into a full input.
    pub fn merge(&self, y: &[bool]) -> Result<Vec<bool>> {
        if y.len() != self.free_count() {
            return Err(Error::ShapeMismatch {
                expected: self.free_count(),
                got: y.len(),
            });
        }
        let mut next = 0;
        Ok(self
            .cells
            .iter()
            .map(|c| match c {
                Cell::Zero => false,
                Cell::One => true,
                Cell::Free => {
                    let v = y[next];
                    next += 1;
                    v
                }
            })
            .collect())
    }

    /// Composes with a restriction on this restriction's free variables,
    /// producing a single restriction on the original arity.
    pub fn compose(&self, then: &Restriction) -> Result<Restriction> {
        if then.arity() != self.free_count() {
            return Err(Error::ShapeMismatch {
                expected: self.free_count(),
                got: then.arity(),
            });
        }
        let mut next = 0;
        let cells = self
            .cells
            .iter()
            .map(|c| match c {
                Cell::Free => {
                    let v = then.cells[next];
                    next += 1;
                    v
                }
                fixed => *fixed,
            })
            .collect();
        Ok(Restriction { cells })
    }

    /// Parses the CLI literal: a string over `{0, 1, *}`, position i =
    /// variable i+1.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(Cell::Zero),
                '1' => Ok(Cell::One),
                '*' => Ok(Cell::Free),
                other => Err(Error::Parse(format!(
                    "invalid restriction character {other:?}, expected 0, 1 or *"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Restriction::new)
    }
}

impl std::fmt::Display for Restriction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.cells {
            f.write_str(match c {
                Cell::Zero => "0",
                Cell::One => "1",
                Cell::Free => "*",
            })?;
        }
        Ok(())
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut result: u128 = 1;
    for i in 0..k.min(n - k) {
        result = result * (n - i) as u128 / (i + 1) as u128;
    }
    result
}

/// Number of restrictions on `arity` variables with exactly `free_count`
/// free positions: `C(arity, free_count) * 2^(arity - free_count)`.
pub fn restriction_count(arity: usize, free_count: usize) -> u128 {
    binomial(arity, free_count) << (arity - free_count) as u32
}

/// Enumerates every restriction with exactly `free_count` free cells, each
/// exactly once, lexicographically over free-sets and then over assignments
/// of the fixed positions.
///
/// Fails with a capacity error when the enumeration would exceed `budget`.
pub fn enumerate_restrictions(
    arity: usize,
    free_count: usize,
    budget: u64,
) -> Result<RestrictionIter> {
    if free_count > arity {
        return Err(Error::ShapeMismatch {
            expected: arity,
            got: free_count,
        });
    }
    let total = restriction_count(arity, free_count);
    if total > budget as u128 {
        return Err(Error::Capacity {
            what: "restriction enumeration",
            required: total,
            cap: budget as u128,
        });
    }
    Ok(RestrictionIter {
        arity,
        free_count,
        free_set: (0..free_count).collect(),
        assignment: 0,
        done: false,
    })
}

/// Iterator over restrictions with a fixed number of free variables.
#[derive(Debug)]
pub struct RestrictionIter {
    arity: usize,
    free_count: usize,
    free_set: Vec<usize>,
    assignment: usize,
    done: bool,
}

impl RestrictionIter {
    fn current(&self) -> Restriction {
        let mut cells = Vec::with_capacity(self.arity);
        let mut fixed_pos = 0;
        for i in 0..self.arity {
            if self.free_set.contains(&i) {
                cells.push(Cell::Free);
            } else {
                let bit = (self.assignment >> fixed_pos) & 1;
                cells.push(if bit == 1 { Cell::One } else { Cell::Zero });
                fixed_pos += 1;
            }
        }
        Restriction::new(cells)
    }

    fn advance(&mut self) {
        let fixed = self.arity - self.free_count;
        self.assignment += 1;
        if self.assignment < (1usize << fixed) {
            return;
        }
        self.assignment = 0;
        // Next combination in lexicographic order.
        let k = self.free_count;
        if k == 0 {
            self.done = true;
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return;
            }
            i -= 1;
            if self.free_set[i] < self.arity - (k - i) {
                self.free_set[i] += 1;
                for j in i + 1..k {
                    self.free_set[j] = self.free_set[j - 1] + 1;
                }
                return;
            }
        }
    }
}

impl Iterator for RestrictionIter {
    type Item = Restriction;

    fn next(&mut self) -> Option<Restriction> {
        if self.done {
            return None;
        }
        let r = self.current();
        self.advance();
        Some(r)
    }
}

/// Enumerates all `3^arity` restrictions, grouped by ascending free count.
pub fn enumerate_all_restrictions(
    arity: usize,
    budget: u64,
) -> Result<impl Iterator<Item = Restriction>> {
    let total: u128 = (0..=arity).map(|f| restriction_count(arity, f)).sum();
    if total > budget as u128 {
        return Err(Error::Capacity {
            what: "restriction enumeration",
            required: total,
            cap: budget as u128,
        });
    }
    let iters: Vec<RestrictionIter> = (0..=arity)
        .map(|f| enumerate_restrictions(arity, f, budget).expect("within budget"))
        .collect();
    Ok(iters.into_iter().flatten())
}
