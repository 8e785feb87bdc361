use thiserror::Error;

use crate::syntax::Flavor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown proposition `{0}`")]
    UnknownProposition(String),

    #[error("invalid proposition name `{0}`")]
    InvalidProposition(String),

    #[error("alphabet has {size} propositions, at most {max} are supported")]
    AlphabetTooLarge { size: usize, max: usize },

    #[error("letter {letter:#x} lies outside an alphabet of {size} propositions")]
    LetterOutOfRange { letter: u32, size: usize },

    #[error("state budget of {cap} exceeded while building {stage}")]
    BudgetExceeded { stage: String, cap: usize },

    #[error("expected a {expected} formula, found a {found} one")]
    FlavorMismatch { expected: Flavor, found: Flavor },

    #[error("cannot collapse an empty set of truth values")]
    EmptyTruthSet,

    #[error("lasso loop must be nonempty")]
    EmptyLoop,

    #[error("malformed monitor artifact: {0}")]
    Artifact(String),
}
