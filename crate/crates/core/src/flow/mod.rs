//! Polynomial solvers for positional scoring rules.
//!
//! When every position after the first carries the same score `A`, the
//! absent votes can all put the target first. What remains is assigning the
//! other `ℓ − 1` slots of each vote to distinct non-target candidates without
//! letting anyone overtake the target, a bipartite assignment with
//! per-candidate quotas that max-flow decides exactly:
//!
//! ```text
//! source ─1─▶ (vote v, slot d) ─1─▶ (vote v, candidate a) ─1─▶ a ─quota(a)─▶ sink
//! ```
//!
//! `quota(a) = ⌊(s(P, target) + t·a₁ − s(P, a) − δ_a) / A⌋`, where `δ_a = 1`
//! if `a` beats the target on ties, and the answer is yes iff the maximum
//! flow saturates every slot.

mod network;

pub use network::{max_flow, Arc, FlowNetwork, FlowResult};

use rayon::prelude::*;

use crate::ballots::{BallotMode, CandidateId, Profile, Ranking, TieBreakOrder};
use crate::error::{Error, Result};
use crate::rules::{scoring_scores, Rounding, Rule, ScoringVector};
use crate::wav::{WavAnswer, WavInstance};

/// The vote/slot/candidate network for one batch of target-first votes.
#[derive(Clone, Debug)]
pub struct WavNetwork {
    pub network: FlowNetwork,
    /// Number of target-first votes being filled.
    pub votes: usize,
    /// Open slots per vote (positions 2..=ℓ).
    pub slots: usize,
    /// Non-target candidates, in index order; node and quota order follow this.
    pub others: Vec<CandidateId>,
    /// Quota of each entry of `others`, i.e. the capacity of its sink arc.
    pub quotas: Vec<i64>,
    target: CandidateId,
    /// Arc index of (vote v, slot d) → (vote v, candidate k).
    slot_arcs: Vec<usize>,
}

impl WavNetwork {
    pub fn required_flow(&self) -> i64 {
        (self.votes * self.slots) as i64
    }

    fn slot_arc(&self, v: usize, d: usize, k: usize) -> usize {
        self.slot_arcs[(v * self.slots + d) * self.others.len() + k]
    }

    /// Reads the votes off an integral flow that saturates every slot.
    pub fn decode(&self, flow: &FlowResult) -> Vec<Ranking> {
        (0..self.votes)
            .map(|v| {
                let mut ranked = vec![self.target];
                for d in 0..self.slots {
                    let k = (0..self.others.len())
                        .find(|&k| flow.flows[self.slot_arc(v, d, k)] == 1)
                        .expect("saturated slot");
                    ranked.push(self.others[k]);
                }
                Ranking::new(ranked)
            })
            .collect()
    }
}

/// Result of building the network: sometimes the answer is known up front.
#[derive(Clone, Debug)]
pub enum NetworkOutcome {
    Network(WavNetwork),
    /// Some candidate already outscores anything the target can reach.
    ImmediateNo,
    /// Slots carry no score, so any fill works; the votes are given.
    ImmediateYes(Vec<Ranking>),
}

/// Scores and tie-breaking needed to size one network.
struct Batch<'a> {
    m: usize,
    target: CandidateId,
    tb: &'a TieBreakOrder,
    known: &'a [i64],
    /// Target's total once every absent vote is cast.
    target_total: i64,
    votes: usize,
    slots: usize,
    slot_score: u64,
}

fn build(batch: &Batch) -> NetworkOutcome {
    let others: Vec<CandidateId> = (0..batch.m)
        .map(CandidateId)
        .filter(|&a| a != batch.target)
        .collect();
    let budgets: Vec<i64> = others
        .iter()
        .map(|&a| {
            let delta = i64::from(batch.tb.favors(a, batch.target));
            batch.target_total - batch.known[a.0] - delta
        })
        .collect();
    if budgets.iter().any(|&b| b < 0) {
        return NetworkOutcome::ImmediateNo;
    }
    if batch.slot_score == 0 || batch.slots == 0 {
        // lowest-index fill keeps the witness deterministic
        let vote = std::iter::once(batch.target)
            .chain(others.iter().copied().take(batch.slots))
            .collect::<Vec<_>>();
        return NetworkOutcome::ImmediateYes(vec![Ranking::new(vote); batch.votes]);
    }
    let quotas: Vec<i64> = budgets
        .iter()
        .map(|b| b / batch.slot_score as i64)
        .collect();

    let (t, slots, k) = (batch.votes, batch.slots, others.len());
    let pair_base = 2 + t * slots;
    let cand_base = pair_base + t * k;
    let mut net = FlowNetwork::new(cand_base + k, 0, 1);
    let mut slot_arcs = Vec::with_capacity(t * slots * k);
    for v in 0..t {
        for d in 0..slots {
            let node = 2 + v * slots + d;
            net.add_arc(0, node, 1);
            for j in 0..k {
                slot_arcs.push(net.add_arc(node, pair_base + v * k + j, 1));
            }
        }
        for j in 0..k {
            net.add_arc(pair_base + v * k + j, cand_base + j, 1);
        }
    }
    for (j, &q) in quotas.iter().enumerate() {
        net.add_arc(cand_base + j, 1, q);
    }
    let out = WavNetwork {
        network: net,
        votes: t,
        slots,
        others,
        quotas,
        target: batch.target,
        slot_arcs,
    };
    NetworkOutcome::Network(out)
}

/// Fills `batch.votes` target-first votes, or `None` if no fill keeps the target ahead.
fn solve_batch(batch: &Batch) -> Option<Vec<Ranking>> {
    resolve(build(batch))
}

fn resolve(outcome: NetworkOutcome) -> Option<Vec<Ranking>> {
    match outcome {
        NetworkOutcome::ImmediateNo => None,
        NetworkOutcome::ImmediateYes(votes) => Some(votes),
        NetworkOutcome::Network(net) => {
            let flow = max_flow(&net.network);
            (flow.value == net.required_flow()).then(|| net.decode(&flow))
        }
    }
}

fn uniform_tail(v: &ScoringVector) -> Result<u64> {
    v.uniform_tail().ok_or_else(|| {
        Error::FlowPrecondition(format!("scores after the first must agree, got ({v})"))
    })
}

fn witness(mode: BallotMode, m: usize, votes: impl IntoIterator<Item = Ranking>) -> Profile {
    let mut p = Profile::new(mode, m).expect("instance mode is valid");
    for r in votes {
        p.add(r, 1).expect("decoded votes are admissible");
    }
    p
}

/// Builds the network for a top-ℓ scoring instance with `a₂ = … = a_ℓ`.
pub fn build_wav_network(inst: &WavInstance) -> Result<NetworkOutcome> {
    inst.validate()?;
    let (v, l) = match (&inst.rule, inst.mode) {
        (Rule::Scoring(v, Rounding::TopExact), BallotMode::TopExactly(l)) => (v, l),
        _ => return Err(Error::FlowPrecondition("needs a top-ℓ scoring rule".into())),
    };
    let tail = uniform_tail(v)?;
    let known = scoring_scores(&inst.known, v, Rounding::TopExact)?;
    let t = inst.absent as i64;
    Ok(build(&Batch {
        m: inst.m,
        target: inst.target,
        tb: &inst.tb,
        known: &known,
        target_total: known[inst.target.0] + t * v.top() as i64,
        votes: inst.absent as usize,
        slots: l - 1,
        slot_score: tail,
    }))
}

/// Decides a top-ℓ scoring instance with `a₂ = … = a_ℓ` by max-flow.
pub fn wav_scoring_topl(inst: &WavInstance) -> Result<WavAnswer> {
    Ok(match resolve(build_wav_network(inst)?) {
        Some(votes) => WavAnswer::Yes(witness(inst.mode, inst.m, votes)),
        None => WavAnswer::No,
    })
}

/// Up-rounding: casting every absent vote as `[target]` is optimal.
pub fn wav_scoring_up_rounding(inst: &WavInstance) -> Result<WavAnswer> {
    inst.validate()?;
    if !matches!(
        (&inst.rule, inst.mode),
        (Rule::Scoring(_, Rounding::Up), BallotMode::UpTo(_))
    ) {
        return Err(Error::FlowPrecondition(
            "needs an up-rounding scoring rule over up-to-L ballots".into(),
        ));
    }
    let solo = Ranking::new(vec![inst.target]);
    let w = witness(
        inst.mode,
        inst.m,
        std::iter::repeat_n(solo, inst.absent as usize),
    );
    Ok(if inst.verifies(&w)? {
        WavAnswer::Yes(w)
    } else {
        WavAnswer::No
    })
}

/// Down-rounding with `a₂ = … = a_L`: some optimal completion uses only
/// `[target]` and full-length target-first votes, so try every split.
pub fn wav_scoring_down_rounding(inst: &WavInstance) -> Result<WavAnswer> {
    inst.validate()?;
    let (v, l) = match (&inst.rule, inst.mode) {
        (Rule::Scoring(v, Rounding::Down), BallotMode::UpTo(l)) => (v, l),
        _ => {
            return Err(Error::FlowPrecondition(
                "needs a down-rounding scoring rule over up-to-L ballots".into(),
            ))
        }
    };
    let tail = uniform_tail(v)?;
    let known = scoring_scores(&inst.known, v, Rounding::Down)?;
    let t = inst.absent as usize;
    let solo_score = v.position_score(Rounding::Down, 1, 0) as i64;

    let found = (0..=t).into_par_iter().find_map_first(|solo| {
        let full = t - solo;
        let batch = Batch {
            m: inst.m,
            target: inst.target,
            tb: &inst.tb,
            known: &known,
            target_total: known[inst.target.0]
                + solo as i64 * solo_score
                + full as i64 * v.top() as i64,
            votes: full,
            slots: l - 1,
            slot_score: tail,
        };
        solve_batch(&batch).map(|votes| (solo, votes))
    });
    Ok(match found {
        Some((solo, votes)) => {
            let singles = std::iter::repeat_n(Ranking::new(vec![inst.target]), solo);
            WavAnswer::Yes(witness(inst.mode, inst.m, singles.chain(votes)))
        }
        None => WavAnswer::No,
    })
}

/// Whether one of the polynomial solvers covers `inst`.
pub fn flow_applicable(inst: &WavInstance) -> bool {
    match (&inst.rule, inst.mode) {
        (Rule::Scoring(v, Rounding::TopExact), BallotMode::TopExactly(_))
        | (Rule::Scoring(v, Rounding::Down), BallotMode::UpTo(_)) => v.uniform_tail().is_some(),
        (Rule::Scoring(_, Rounding::Up), BallotMode::UpTo(_)) => true,
        _ => false,
    }
}

/// Dispatches to the matching polynomial solver.
pub fn wav_scoring(inst: &WavInstance) -> Result<WavAnswer> {
    match (&inst.rule, inst.mode) {
        (Rule::Scoring(_, Rounding::TopExact), BallotMode::TopExactly(_)) => wav_scoring_topl(inst),
        (Rule::Scoring(_, Rounding::Up), BallotMode::UpTo(_)) => wav_scoring_up_rounding(inst),
        (Rule::Scoring(_, Rounding::Down), BallotMode::UpTo(_)) => wav_scoring_down_rounding(inst),
        _ => Err(Error::FlowPrecondition(format!(
            "no polynomial solver for {} under {}",
            inst.rule, inst.mode
        ))),
    }
}
