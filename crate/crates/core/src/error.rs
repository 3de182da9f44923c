use thiserror::Error;

/// Syntax error with a 1-based position in the input text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    /// Shifts the position by a column offset (for fragments cut out of a
    /// longer line).
    pub fn offset(mut self, line: usize, column: usize) -> Self {
        if self.line == 1 {
            self.column += column;
        }
        self.line += line;
        self
    }
}

#[derive(Debug, Error)]
pub enum CoreError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0} is finite; an infinite cardinal is required here")]
    FiniteCardinal(String),
    #[error("{0} is not a limit ordinal")]
    NotLimit(String),
    #[error("inconsistent context: {0}")]
    InconsistentContext(String),
    #[error("F(0) is the trivial group, which is trivially compact")]
    TrivialGroup,
    #[error("no witness constructed: Min({kappa}, {sigma}) is {verdict}")]
    NoWitness {
        kappa: String,
        sigma: String,
        verdict: String,
    },
    #[error("prime {0} does not occur in the ambient group")]
    UnknownPrime(u64),
    #[error("generators are not independent (free rank {rank} < {count} generators)")]
    DependentGenerators { rank: usize, count: usize },
    #[error("malformed subgroup: {0}")]
    MalformedSubgroup(String),
    #[error("malformed family: {0}")]
    MalformedFamily(String),
    #[error("strength t={t} is outside 1..={s}")]
    StrengthOutOfRange { s: usize, t: usize },
    #[error("cap exceeded: (s={s}, t={t}) is beyond the exhaustive-search cap (s<={max_s}, t<={max_t})")]
    CapExceeded {
        s: usize,
        t: usize,
        max_s: usize,
        max_t: usize,
    },
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
