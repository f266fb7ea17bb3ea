use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input{}: {msg}", fmt_line(*.line))]
    MalformedInput { line: Option<usize>, msg: String },

    #[error("a unit contains {k} negative trees, above the limit of {max_k}")]
    LimitExceeded { k: usize, max_k: usize },

    #[error("oracle size guard: n = {n} exceeds {max}")]
    SizeGuard { n: usize, max: usize },

    #[error("no path from {from} to {to}")]
    NoPath { from: usize, to: usize },

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn malformed(line: Option<usize>, msg: impl Into<String>) -> Self {
        Error::MalformedInput { line, msg: msg.into() }
    }
}

fn fmt_line(line: Option<usize>) -> String {
    line.map(|l| format!(" at line {l}")).unwrap_or_default()
}
