use thiserror::Error;

/// Errors produced by the function representation and solver layers.
#[derive(Debug, Error)]
pub enum Error {
    /// An input vector (or restriction) does not match the arity of the
    /// function it is applied to.
    #[error("input shape mismatch: expected length {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },

    /// An operation was asked to run past one of the configured caps.
    #[error("capacity exceeded for {what}: required {required}, cap {cap}")]
    Capacity {
        what: &'static str,
        required: u128,
        cap: u128,
    },

    /// A certificate claim refers to a position outside the base function.
    #[error("malformed certificate claim: {0}")]
    MalformedClaim(String),

    /// A game participant broke the query protocol.
    #[error("protocol error: {0}")]
    Protocol(String),

    /// Textual input (family literal, restriction literal, table file) failed
    /// to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// Invalid configuration value.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
