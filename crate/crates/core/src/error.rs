use thiserror::Error;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation
    /// (inadmissible index, negative wavenumber, bad angle, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A hard cap (polynomial degree, table size, quadrature order) was
    /// exceeded. Caps exist so double precision keeps meaningful accuracy.
    #[error("cap exceeded: {what} is limited to {limit}, got {got}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    /// A structural contract between arguments was violated: samples not on
    /// the rule's grid, duplicate channel labels, mismatched orders.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An iterative numerical procedure failed to converge or produced an
    /// invalid intermediate state.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// An input file could not be parsed. `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A run configuration field failed validation; names the field.
    #[error("invalid --{field}: {msg}")]
    Config { field: &'static str, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
