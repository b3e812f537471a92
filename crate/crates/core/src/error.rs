//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by partition, series, measure, sampler, and verifier code.
#[derive(Debug, Error)]
pub enum Error {
    /// A cell was addressed outside the diagram of its partition.
    #[error("cell ({row},{col}) lies outside the shape {shape}")]
    CellOutsideShape {
        /// Compact text form of the shape.
        shape: String,
        /// 1-indexed row of the offending cell.
        row: usize,
        /// 1-indexed column of the offending cell.
        col: usize,
    },
    /// A parameter left the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// A series or infinite product fails its convergence condition.
    #[error("divergent series: {0}")]
    DivergentSeries(String),
    /// A truncated series was too short for the requested quantity.
    #[error("truncation too short: {0}")]
    TruncationTooShort(String),
    /// A denominator factor of a cell product vanished.
    #[error("singular parameter: {0}")]
    SingularParameter(String),
    /// A skew pair was required to be a horizontal strip but is not.
    #[error("{upper} minus {lower} is not a horizontal strip")]
    NotAStrip {
        /// Compact text form of the larger shape.
        upper: String,
        /// Compact text form of the smaller shape.
        lower: String,
    },
    /// Division by an exactly zero quantity.
    #[error("zero denominator: {0}")]
    ZeroDenominator(String),
    /// The measure specification is outside the supported exact regimes.
    #[error("unsupported measure specification: {0}")]
    UnsupportedSpec(String),
    /// A desk-scale enumeration cap was exceeded.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    /// A conjugacy-class datum violates its structural constraints.
    #[error("invalid class datum: {0}")]
    InvalidDatum(String),
    /// A run configuration is inconsistent.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// An unknown verification suite name was requested.
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    /// A sampler was given a specification admitting negative probabilities.
    #[error("negative probability: {0}")]
    NonPositiveProbability(String),
    /// Text could not be parsed as a partition, tableau, or rational.
    #[error("parse error: {0}")]
    Parse(String),
    /// A tableau violates the standard-filling invariants.
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    /// A one-line word is not a permutation.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
