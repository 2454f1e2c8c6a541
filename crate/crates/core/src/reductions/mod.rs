//! Hardness constructions from restricted exact 3-cover.
//!
//! Each generator turns an [`Rxc3Instance`] into a [`WavInstance`] whose
//! answer is YES exactly when the cover exists, together with a role map and
//! a list of [`Claim`]s: the counts, margins and score tables the
//! construction is supposed to produce. [`verify_reduction`] re-measures
//! every claim on the generated profile, builds a witness when a cover
//! exists, and runs the exhaustive solver when none does.

mod copeland;
mod maximin;
mod rxc3;
mod stv;
mod verify;

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::ballots::{BallotMode, CandidateId, Profile, WeightedMajorityGraph};
use crate::error::{Error, Result};
use crate::mcgarvey::{realize_wmg, WmgTarget};
use crate::wav::WavInstance;

pub use copeland::{copeland_witness_from_cover, reduce_copeland};
pub use maximin::{maximin_witness_from_cover, reduce_maximin};
pub use rxc3::{
    check_solution, preprocess_rxc3, solve_rxc3_bruteforce, solve_rxc3_with_budget, validate_rxc3,
    Rxc3Instance, Rxc3Solution,
};
pub use stv::{reduce_stv, stv_total_votes, stv_witness_from_cover};
pub use verify::{
    verify_reduction, verify_reduction_with, CheckResult, Status, VerificationReport,
};

/// Which construction produced an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionKind {
    Stv,
    Maximin,
    Copeland(Rational64),
}

impl ReductionKind {
    /// What `q` must be divisible by before the construction applies with
    /// `l`-candidate ballots.
    pub fn required_divisor(self, l: usize) -> usize {
        match self {
            ReductionKind::Stv => 6,
            ReductionKind::Maximin | ReductionKind::Copeland(_) => 6 * (l - 1),
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionKind::Stv => f.write_str("stv"),
            ReductionKind::Maximin => f.write_str("maximin"),
            ReductionKind::Copeland(a) => write!(f, "copeland:{a}"),
        }
    }
}

/// What a candidate stands for in a construction. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    /// The candidate the absent votes should elect.
    Target,
    /// The single rival of the STV construction.
    Rival,
    /// `d_j`; `d_0` collects the leftovers, `d_j` stands for element `j`.
    Dummy(usize),
    /// `b_i`, paired with set `i`.
    Bridge(usize),
    /// `b̄_i`.
    BridgeBar(usize),
    Element(usize),
    Set(usize),
    /// `w_i` of the Maximin and Copeland constructions.
    Filler(usize),
    /// The extra candidate `b` closing the diametric cycles.
    Hub,
}

impl Role {
    pub fn name(self) -> String {
        match self {
            Role::Target => "c".into(),
            Role::Rival => "w".into(),
            Role::Dummy(j) => format!("d{j}"),
            Role::Bridge(i) => format!("b{i}"),
            Role::BridgeBar(i) => format!("bbar{i}"),
            Role::Element(i) => format!("x{i}"),
            Role::Set(j) => format!("S{j}"),
            Role::Filler(i) => format!("w{i}"),
            Role::Hub => "b".into(),
        }
    }
}

/// Which profile a claim is measured on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    Known,
    /// Known votes merged with the witness built from a cover.
    Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    Candidates,
    Absent,
    Votes,
    /// Copies of one ranking, given by candidate indices.
    RankingCount(Vec<usize>),
    /// ω(a → b).
    Margin(usize, usize),
    MaximinScore(usize),
    CopelandScore(usize),
    /// STV plurality score at the start of `round` (1-based). Vacuous when
    /// the candidate is already out.
    RoundScore {
        round: usize,
        candidate: usize,
    },
    /// How many of `candidates` are still standing at the start of `round`.
    Standing {
        round: usize,
        candidates: Vec<usize>,
    },
    /// Index of the candidate STV eliminates in `round`.
    EliminatedIn {
        round: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bound {
    Exactly,
    AtMost,
}

/// A number the construction promises, with a short label naming it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub label: String,
    pub stage: Stage,
    pub quantity: Quantity,
    pub bound: Bound,
    pub value: Rational64,
}

impl Claim {
    pub fn exactly(label: impl Into<String>, stage: Stage, quantity: Quantity, value: i64) -> Self {
        Claim::rational(
            label,
            stage,
            quantity,
            Bound::Exactly,
            Rational64::from_integer(value),
        )
    }

    pub fn at_most(label: impl Into<String>, stage: Stage, quantity: Quantity, value: i64) -> Self {
        Claim::rational(
            label,
            stage,
            quantity,
            Bound::AtMost,
            Rational64::from_integer(value),
        )
    }

    pub fn rational(
        label: impl Into<String>,
        stage: Stage,
        quantity: Quantity,
        bound: Bound,
        value: Rational64,
    ) -> Self {
        Claim {
            label: label.into(),
            stage,
            quantity,
            bound,
            value,
        }
    }

    pub fn holds_for(&self, measured: Rational64) -> bool {
        match self.bound {
            Bound::Exactly => measured == self.value,
            Bound::AtMost => measured <= self.value,
        }
    }
}

/// A generated WAV instance plus everything needed to check it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub kind: ReductionKind,
    /// The cover instance actually encoded.
    pub source: Rxc3Instance,
    pub instance: WavInstance,
    /// `roles[c]` is the role of candidate `c`; candidate order is also the tie-break order.
    pub roles: Vec<Role>,
    pub claims: Vec<Claim>,
}

impl ReductionOutput {
    pub fn names(&self) -> Vec<String> {
        self.roles.iter().map(|r| r.name()).collect()
    }

    pub fn candidate(&self, role: Role) -> Option<CandidateId> {
        self.roles.iter().position(|&r| r == role).map(CandidateId)
    }

    /// Ballot length ℓ (or L for up-to-L instances).
    pub fn ballot_length(&self) -> usize {
        self.instance.mode.limit()
    }
}

/// The witness for `sol`, dispatched on the construction.
pub fn witness_from_cover(red: &ReductionOutput, sol: &Rxc3Solution) -> Result<Profile> {
    match red.kind {
        ReductionKind::Stv => stv_witness_from_cover(red, sol),
        ReductionKind::Maximin => maximin_witness_from_cover(red, sol),
        ReductionKind::Copeland(_) => copeland_witness_from_cover(red, sol),
    }
}

fn check_mode(mode: BallotMode) -> Result<usize> {
    let l = mode.limit();
    if l < 2 {
        return Err(Error::ReductionPrecondition(format!(
            "ballots must list at least two candidates, got {l}"
        )));
    }
    Ok(l)
}

fn check_divisible(q: usize, divisor: usize) -> Result<()> {
    if !q.is_multiple_of(divisor) {
        return Err(Error::Divisibility { q, divisor });
    }
    Ok(())
}

/// Realizes an even gadget graph, then re-labels the ballots with `mode`.
fn gadget_profile(
    g: WeightedMajorityGraph,
    mode: BallotMode,
    q: usize,
    divisor: usize,
) -> Result<Profile> {
    if g.pairs().any(|(_, _, w)| w % 2 != 0) {
        return Err(Error::Divisibility { q, divisor });
    }
    let l = mode.limit();
    realize_wmg(&WmgTarget::new(g)?, l)?.with_mode(mode)
}

/// Rankings and witnesses for the Maximin and Copeland constructions: `t`
/// ballots `[c ≻ S_j ≻ …]` carrying the cover's sets `ℓ − 1` at a time.
fn target_then_sets(red: &ReductionOutput, sol: &Rxc3Solution) -> Result<Profile> {
    check_solution(&red.source, sol)?;
    let per_vote = red.ballot_length() - 1;
    let c = red.instance.target;
    let mut p = Profile::new(red.instance.mode, red.instance.m)?;
    for chunk in sol.indices.chunks(per_vote) {
        let mut r = vec![c];
        for &j in chunk {
            r.push(red.candidate(Role::Set(j + 1)).expect("set role"));
        }
        p.add(crate::ballots::Ranking::new(r), 1)?;
    }
    Ok(p)
}
