use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// State and lattice disagree on the number of sites.
    #[error("dimension mismatch: expected {expected} sites, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Moments of a state with zero norm (or a perfectly uniform ring
    /// distribution) are not defined.
    #[error("undefined moment: {0}")]
    UndefinedMoment(&'static str),

    #[error("measurement invalid: {0}")]
    MeasurementInvalid(String),

    /// At `μ = 1` information flow halts and `n = 1/ζ` diverges.
    #[error("infinite refraction index: information flow halts at mu = 1")]
    InfiniteIndex,

    /// The clock or rod does not fit inside the causal network.
    #[error("geometry error: network {rows}x{cols} too small, need at least {required_rows}x{required_cols}")]
    Geometry {
        rows: usize,
        cols: usize,
        required_rows: usize,
        required_cols: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Short class name, used by the CLI on the diagnostic stream.
    pub fn class(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "dimension",
            Error::InvalidArgument(_) => "argument",
            Error::UndefinedMoment(_) => "undefined-moment",
            Error::MeasurementInvalid(_) => "measurement",
            Error::InfiniteIndex => "infinite-index",
            Error::Geometry { .. } => "geometry",
            Error::Parse(_) => "parse",
        }
    }
}
