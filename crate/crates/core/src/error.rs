use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed {what}: {message}")]
    Malformed { what: &'static str, message: String },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("vertex `{0}` has no outgoing edge")]
    DeadEnd(String),

    #[error("rank {rank} exceeds the declared maximum {max}")]
    RankOutOfRange { rank: u32, max: u32 },

    #[error("strategy moves from `{from}` to `{to}`, which is not an edge")]
    IllegalMove { from: String, to: String },

    #[error("strategy is undefined at `{0}`")]
    MissingMove(String),

    #[error("game has {vertices} vertices, brute force is limited to {limit}")]
    GameTooLarge { vertices: usize, limit: usize },

    #[error("{step}: macro-state budget of {budget} exceeded")]
    BudgetExceeded { step: String, budget: usize },

    #[error("malformed game symbol `{0}`")]
    MalformedSymbol(String),

    #[error("index overflow: {0}")]
    IndexOverflow(String),

    #[error("difference predicate failed: {0}")]
    Predicate(String),

    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unbound variable `{name}` at {pos}")]
    UnboundVariable { name: String, pos: usize },

    #[error("sort clash at {pos}: {message}")]
    SortClash { pos: usize, message: String },

    #[error("formula is not a sentence; free variables: {0}")]
    NotASentence(String),

    #[error("while compiling `{subformula}`: {source}")]
    Compile {
        subformula: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn malformed(what: &'static str, message: impl Into<String>) -> Self {
        Error::Malformed {
            what,
            message: message.into(),
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True when the error (or its cause) is a budget overflow.
    pub fn is_budget(&self) -> bool {
        match self {
            Error::BudgetExceeded { .. } => true,
            Error::Compile { source, .. } => source.is_budget(),
            _ => false,
        }
    }
}
