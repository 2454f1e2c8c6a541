use thiserror::Error;

use crate::ballots::CandidateId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("candidate {candidate} listed twice in ranking")]
    DuplicateCandidate { candidate: CandidateId },

    #[error("ranking of length {len} is not admissible under {mode}")]
    RankingLength { len: usize, mode: String },

    #[error("candidate {candidate} out of range for {m} candidates")]
    CandidateOutOfRange { candidate: CandidateId, m: usize },

    #[error("a candidate cannot be compared with itself")]
    SelfComparison,

    #[error("ballot mode {mode} needs at least its parameter of candidates, got m = {m}")]
    ModeExceedsCandidates { mode: String, m: usize },

    #[error("profiles are incompatible: {0}")]
    ProfileMismatch(String),

    #[error("tie-break order is not a permutation of 0..{m}")]
    InvalidTieBreak { m: usize },

    #[error("rule does not fit the ballot mode: {0}")]
    RuleMismatch(String),

    #[error("invalid scoring vector: {0}")]
    InvalidScoringVector(String),

    #[error("Copeland parameter {0} lies outside [0, 1]")]
    InvalidAlpha(String),

    #[error("maximin needs at least two candidates")]
    TooFewCandidates,

    #[error("search space of {needed} completions exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("flow solver precondition violated: {0}")]
    FlowPrecondition(String),

    #[error("invalid weighted majority target: {0}")]
    InvalidWmgTarget(String),

    #[error("invalid gadget parameters: {0}")]
    InvalidGadget(String),

    #[error("invalid RXC3 instance: {0}")]
    InvalidRxc3(String),

    #[error("q = {q} must be divisible by {divisor}")]
    Divisibility { q: usize, divisor: usize },

    #[error("reduction precondition violated: {0}")]
    ReductionPrecondition(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
