use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("invalid braid letter {letter:?} at position {position} (expected one of A, a, B, b)")]
    BadLetter { letter: char, position: usize },

    #[error("alphabet must contain at least one generator")]
    EmptyAlphabet,

    #[error("unknown gate {0:?} (expected I, X, H, T or eight comma-separated reals)")]
    UnknownGate(String),

    #[error("custom gate is not unitary within 1e-12")]
    NotUnitary,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("matrix is not special unitary: |det - 1| = {0:e}")]
    NotSpecialUnitary(f64),

    #[error("group-commutator decomposition needs d(I, delta) < 0.5, got {distance}")]
    TooFarFromIdentity { distance: f64 },

    #[error("recursion order {order}: {source}")]
    Recursion {
        order: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(
        "exhaustive search needs {required} evaluations but the budget is {budget}; use mitm or ga"
    )]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("table cache: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True when the error (or the one it wraps) is a search-budget refusal.
    pub fn is_budget_refusal(&self) -> bool {
        match self {
            Error::BudgetExceeded { .. } => true,
            Error::Recursion { source, .. } => source.is_budget_refusal(),
            _ => false,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
