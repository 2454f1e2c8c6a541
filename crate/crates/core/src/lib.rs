//! Winner determination with absent top-truncated votes.
//!
//! Given a profile of known ballots, each listing only a voter's top few
//! candidates, and a number of ballots not yet cast, can those missing
//! ballots make a chosen candidate win? This crate answers that question for
//! STV, Copeland^α, Maximin and positional scoring rules:
//!
//! - [`ballots`]: top-ℓ and up-to-L ballots, anonymous profiles, pairwise margins.
//! - [`rules`]: resolute winner computation with explicit tie-breaking.
//! - [`wav`]: the decision problem and an exhaustive anonymous-profile solver.
//! - [`flow`]: polynomial max-flow solvers for scoring rules with `a₂ = … = a_ℓ`.
//! - [`mcgarvey`]: profiles realizing any even-weight pairwise margin graph.
//! - [`reductions`]: exact-3-cover instance generators for STV, Maximin and
//!   Copeland, with witness builders and claim verification.
//! - [`format`] and [`cli`]: text formats and the command implementations
//!   behind the `topwav` binary.

pub mod ballots;
pub mod cli;
pub mod error;
pub mod flow;
pub mod format;
pub mod mcgarvey;
pub mod reductions;
pub mod rules;
pub mod wav;

pub use ballots::{
    merge, prefers, validate_ranking, wmg, BallotMode, CandidateId, Preference, Profile, Ranking,
    TieBreakOrder, WeightedMajorityGraph,
};
pub use error::{Error, Result};
pub use rules::{winner, Rounding, Rule, ScoringVector};
pub use wav::{wav_bruteforce, WavAnswer, WavInstance};
