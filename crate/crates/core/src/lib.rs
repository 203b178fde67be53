//! Exact Boolean function complexity laboratory.
//!
//! The crate provides bit-packed truth tables, a few structured function
//! families (block functions, TRIBES, cheat-sheet compositions), exact
//! solvers for the classical complexity measures, restriction-space search,
//! and a query-game engine with explicit adversary strategies.
//!
//! Everything is exact and deterministic: solvers either return the true
//! value or fail with a capacity error, and randomized search is always
//! seeded.

pub mod condense;
pub mod config;
pub mod constructions;
pub mod error;
pub mod function;
pub mod games;
pub mod measures;
pub mod restriction;
pub mod table;

pub use config::Config;
pub use error::{Error, Result};
pub use function::StructuredFunction;
pub use restriction::{Cell, Restriction};
pub use table::{Constancy, DenseTruthTable};
