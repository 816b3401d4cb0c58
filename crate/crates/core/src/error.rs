use std::fmt;

pub type Result<T> = std::result::Result<T, Error>;

/// Position inside a text input, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Operands have incompatible variable counts, ranks or degrees.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// The input violates a structural invariant (not a cycle, anchor not compatible, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("syntax error at {location}: {message}")]
    Syntax { location: Location, message: String },

    /// An internal certificate failed where the theory guarantees success.
    #[error("engine failure: {0}")]
    Engine(String),

    /// A construction hit the configured truncation before finishing.
    #[error("bound exceeded: {0}")]
    Bound(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn engine(msg: impl Into<String>) -> Self {
        Error::Engine(msg.into())
    }
}
