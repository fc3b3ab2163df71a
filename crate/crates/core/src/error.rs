use thiserror::Error;

/// Errors raised by the computational routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("size mismatch: |{left_name}| = {left} but |{right_name}| = {right}")]
    SizeMismatch {
        left_name: &'static str,
        left: u32,
        right_name: &'static str,
        right: u32,
    },

    #[error("{what} = {value} is out of range (allowed {allowed})")]
    OutOfRange {
        what: &'static str,
        value: i64,
        allowed: String,
    },

    #[error("coefficient z^{index} requested from a series truncated at order {order}")]
    TruncationExceeded { index: usize, order: usize },

    #[error("series operation `{op}` requires {requirement}")]
    SeriesDomain {
        op: &'static str,
        requirement: &'static str,
    },

    /// The Riemann-Hurwitz bookkeeping `r*s = 2g - 2 + l(alpha) + l(beta)` fails.
    #[error("invalid ramification data: {0}")]
    Ramification(String),

    #[error("parity violation: {0}")]
    Parity(String),

    #[error("resource guard: degree d = {d} exceeds the limit {limit} for {method}")]
    ResourceGuard {
        d: u32,
        limit: u32,
        method: &'static str,
    },

    #[error("index constraint violated: {0}")]
    IndexConstraint(String),

    /// Two computation routes that must agree returned different values.
    #[error("identity failed: {0}")]
    IdentityFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
