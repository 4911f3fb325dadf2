//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A configuration value or combination of values is invalid.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A vector with no nonzero entry cannot be mapped onto the phase codebook.
    #[error("degenerate (all-zero) vector cannot be quantized")]
    DegenerateVector,

    /// The exhaustive activation search was asked to enumerate too many candidates.
    #[error("feasible activation set has {size} members, exceeding the enumeration limit {limit}")]
    FeasibleSetTooLarge { size: u128, limit: u128 },

    /// A scheme identifier was not recognized.
    #[error("unknown scheme: {0:?}")]
    UnknownScheme(String),

    /// The scheme has no fronthaul accounting.
    #[error("no fronthaul model for scheme: {0:?}")]
    NoFronthaulModel(String),

    /// Energy efficiency is undefined for non-positive power.
    #[error("power must be positive, got {0} mW")]
    NonPositivePower(f64),

    /// Reading or writing an output file failed.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Serializing records failed.
    #[error("serialization error: {0}")]
    Serialize(String),
}

pub type Result<T> = std::result::Result<T, Error>;
