use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the analytics routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two input records share an id.
    DuplicateId(String),
    /// A fit or estimator received too few usable points.
    TooFewPoints { needed: usize, got: usize },
    /// The dependent variable has no variance, so R² is undefined.
    DegenerateVariance,
    /// Every sample is identical; the tail exponent cannot be estimated.
    DegenerateSample,
    /// A power-law fit received a non-positive or non-finite value.
    NonPositive(f64),
    /// An iterative solver stopped before reaching its tolerance.
    NotConverged { iterations: usize, residual: f64 },
    /// The citation subgraph handed to trimming contains a cycle.
    Cycle,
    /// A referenced node does not exist in the graph.
    UnknownNode(String),
    /// No pair gained an edge between the two snapshots.
    DegenerateYear(i32),
    /// Training data contains a single class only.
    SingleClass,
    /// Malformed boolean query.
    Query { name: String, message: String },
    /// A parameter lies outside its allowed range.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateId(id) => write!(f, "duplicate record id `{id}`"),
            Error::TooFewPoints { needed, got } => {
                write!(f, "need at least {needed} points, got {got}")
            }
            Error::DegenerateVariance => f.write_str("degenerate variance"),
            Error::DegenerateSample => {
                f.write_str("all samples are identical; the estimator diverges")
            }
            Error::NonPositive(v) => write!(f, "power-law fit requires positive values, got {v}"),
            Error::NotConverged { iterations, residual } => write!(
                f,
                "no convergence after {iterations} iterations (residual {residual:e})"
            ),
            Error::Cycle => f.write_str("citation subgraph contains a cycle"),
            Error::UnknownNode(key) => write!(f, "unknown node `{key}`"),
            Error::DegenerateYear(year) => write!(f, "degenerate year {year}: no new edges"),
            Error::SingleClass => f.write_str("training data contains a single class"),
            Error::Query { name, message } => write!(f, "query `{name}`: {message}"),
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}
