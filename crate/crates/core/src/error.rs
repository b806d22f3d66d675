use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested table or grid exceeds the supported size.
    #[error("size error: {0}")]
    Size(String),

    /// Exact-arithmetic evaluation requested outside its supported regime.
    #[error("regime error: {0}")]
    Regime(String),

    /// Argument too close to a removable singularity.
    #[error("singularity error: {0}")]
    Singularity(String),

    /// A series failed to converge within its iteration cap.
    #[error("precision error: {0}")]
    Precision(String),

    /// Simulation configuration rejected (invalid or not critical).
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
