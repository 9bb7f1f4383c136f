use thiserror::Error;

use crate::formal::FormalSum;

#[derive(Debug, Error)]
pub enum Error {
    #[error("letter with generator index {index} is outside the alphabet of genus {genus}")]
    Alphabet { index: usize, genus: usize },

    #[error("genus mismatch: {left} vs {right}")]
    GenusMismatch { left: usize, right: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("isometry is not hyperbolic (|trace| = {trace})")]
    NotHyperbolic { trace: f64 },

    #[error("geodesics do not cross")]
    NotCrossing,

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("bracket did not stabilize between conjugator depths {depth} and {next_depth}")]
    NonStabilized {
        depth: usize,
        next_depth: usize,
        lower: Box<FormalSum>,
        upper: Box<FormalSum>,
    },

    #[error("no sign configuration passes every axiom")]
    NoPassingSigns,

    #[error("schema error: {0}")]
    Schema(String),
}

impl Error {
    /// Machine-readable tag used by the CLI's JSON error payloads.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Alphabet { .. } => "alphabet",
            Error::GenusMismatch { .. } => "genus_mismatch",
            Error::Unsupported(_) => "unsupported",
            Error::Parse { .. } => "parse",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::NotHyperbolic { .. } => "not_hyperbolic",
            Error::NotCrossing => "not_crossing",
            Error::Degenerate(_) => "degenerate",
            Error::NonStabilized { .. } => "non_stabilized",
            Error::NoPassingSigns => "no_passing_signs",
            Error::Schema(_) => "schema",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
