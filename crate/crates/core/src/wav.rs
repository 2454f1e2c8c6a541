//! The winner-with-absent-votes decision problem and its exhaustive solver.
//!
//! Anonymous rules only depend on how many copies of each ballot are cast, so
//! the absent votes are searched as multisets of admissible rankings. With R
//! rankings and t absent votes there are C(t + R − 1, t) such multisets,
//! which is polynomial once either the candidate count or t is fixed.

use num_rational::Rational64;
use rayon::prelude::*;

use crate::ballots::{
    wmg, BallotMode, CandidateId, Profile, Ranking, TieBreakOrder, WeightedMajorityGraph,
};
use crate::error::{Error, Result};
use crate::rules::{
    add_positional, copeland_from_wmg, maximin_from_wmg, pick_winner, run_stv, winner, Rule,
};

/// Default cap on the number of completions the exhaustive solver will try.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WavInstance {
    pub mode: BallotMode,
    pub m: usize,
    pub known: Profile,
    /// Number of absent votes.
    pub absent: u64,
    pub target: CandidateId,
    pub rule: Rule,
    pub tb: TieBreakOrder,
}

impl WavInstance {
    pub fn new(
        known: Profile,
        absent: u64,
        target: CandidateId,
        rule: Rule,
        tb: TieBreakOrder,
    ) -> Result<Self> {
        let inst = WavInstance {
            mode: known.mode(),
            m: known.num_candidates(),
            known,
            absent,
            target,
            rule,
            tb,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        if self.known.num_candidates() != self.m || self.known.mode() != self.mode {
            return Err(Error::ProfileMismatch(
                "known profile disagrees with the instance header".into(),
            ));
        }
        if self.target.0 >= self.m {
            return Err(Error::CandidateOutOfRange {
                candidate: self.target,
                m: self.m,
            });
        }
        if self.tb.num_candidates() != self.m {
            return Err(Error::InvalidTieBreak { m: self.m });
        }
        self.rule.check(self.mode)
    }

    /// Whether `witness` has exactly `absent` votes and makes the target win.
    pub fn verifies(&self, witness: &Profile) -> Result<bool> {
        if witness.num_votes() != self.absent {
            return Ok(false);
        }
        let merged = self.known.merge(witness)?;
        Ok(winner(&merged, &self.rule, &self.tb)? == self.target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WavAnswer {
    /// A profile of exactly `absent` votes under which the target wins.
    Yes(Profile),
    No,
}

impl WavAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, WavAnswer::Yes(_))
    }

    pub fn witness(&self) -> Option<&Profile> {
        match self {
            WavAnswer::Yes(p) => Some(p),
            WavAnswer::No => None,
        }
    }
}

/// Every admissible ranking for `mode` over `m` candidates, in lexicographic order.
pub fn enumerate_rankings(mode: BallotMode, m: usize) -> Result<Vec<Ranking>> {
    let limit = mode.limit();
    if limit == 0 || limit > m {
        return Err(Error::ModeExceedsCandidates {
            mode: mode.to_string(),
            m,
        });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(limit);
    let mut used = vec![false; m];
    extend_rankings(mode, m, &mut prefix, &mut used, &mut out);
    Ok(out)
}

fn extend_rankings(
    mode: BallotMode,
    m: usize,
    prefix: &mut Vec<CandidateId>,
    used: &mut [bool],
    out: &mut Vec<Ranking>,
) {
    if !prefix.is_empty() && mode.admits_length(prefix.len()) {
        out.push(Ranking::new(prefix.clone()));
    }
    if prefix.len() == mode.limit() {
        return;
    }
    for c in 0..m {
        if !used[c] {
            used[c] = true;
            prefix.push(CandidateId(c));
            extend_rankings(mode, m, prefix, used, out);
            prefix.pop();
            used[c] = false;
        }
    }
}

/// m!/(m−k)!, saturating at `u128::MAX`.
pub fn falling_factorial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((m - i) as u128))
}

/// Number of admissible rankings for `mode` over `m` candidates.
pub fn count_rankings(mode: BallotMode, m: usize) -> u128 {
    match mode {
        BallotMode::TopExactly(l) => falling_factorial(m, l),
        BallotMode::UpTo(l) => (1..=l).map(|i| falling_factorial(m, i)).sum(),
    }
}

/// Number of size-`t` multisets over `r` items, C(t + r − 1, t), saturating.
pub fn multiset_count(r: u128, t: u64) -> u128 {
    if t == 0 {
        return 1;
    }
    if r == 0 {
        return 0;
    }
    // C(r − 1 + t, t) built incrementally; each prefix product is itself a binomial
    let mut acc: u128 = 1;
    for i in 1..=t as u128 {
        acc = match acc.checked_mul(r - 1 + i) {
            Some(x) => x / i,
            None => return u128::MAX,
        };
    }
    acc
}

/// Non-decreasing index sequences of length `t` over `0..r`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Multisets {
    r: usize,
    next: Option<Vec<usize>>,
}

impl Multisets {
    pub fn new(r: usize, t: usize) -> Self {
        let next = if t > 0 && r == 0 {
            None
        } else {
            Some(vec![0; t])
        };
        Multisets { r, next }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // bump the rightmost entry that can still grow, then flatten the suffix
        if let Some(i) = succ.iter().rposition(|&x| x + 1 < self.r) {
            let v = succ[i] + 1;
            succ[i..].iter_mut().for_each(|x| *x = v);
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Every anonymous profile of `t` votes drawn from `rankings`, each exactly once.
pub fn enumerate_anonymous_profiles<'a>(
    rankings: &'a [Ranking],
    mode: BallotMode,
    m: usize,
    t: usize,
) -> impl Iterator<Item = Profile> + 'a {
    Multisets::new(rankings.len(), t).map(move |idx| profile_from_indices(rankings, &idx, mode, m))
}

fn profile_from_indices(
    rankings: &[Ranking],
    idx: &[usize],
    mode: BallotMode,
    m: usize,
) -> Profile {
    let mut p = Profile::new(mode, m).expect("mode already validated");
    for &i in idx {
        p.add(rankings[i].clone(), 1)
            .expect("enumerated rankings are admissible");
    }
    p
}

/// Search settings for [`wav_bruteforce_with`].
#[derive(Clone, Copy, Debug)]
pub struct BruteForceConfig {
    pub budget: u128,
    /// Completions per parallel batch; 0 searches sequentially.
    pub batch: usize,
}

impl Default for BruteForceConfig {
    fn default() -> Self {
        BruteForceConfig {
            budget: DEFAULT_BUDGET,
            batch: 8192,
        }
    }
}

/// Winner evaluation with the known profile folded in once up front.
enum Evaluator<'a> {
    Scoring {
        base: Vec<i64>,
        deltas: Vec<Vec<i64>>,
    },
    Pairwise {
        base: WeightedMajorityGraph,
        deltas: Vec<WeightedMajorityGraph>,
        alpha: Option<Rational64>,
    },
    Stv {
        known: Vec<(&'a [CandidateId], u64)>,
    },
}

impl<'a> Evaluator<'a> {
    fn new(inst: &'a WavInstance, rankings: &[Ranking]) -> Result<Self> {
        Ok(match &inst.rule {
            Rule::Scoring(v, rounding) => {
                let mut base = vec![0i64; inst.m];
                for (r, c) in inst.known.entries() {
                    add_positional(&mut base, r, c, v, *rounding);
                }
                let deltas = rankings
                    .iter()
                    .map(|r| {
                        let mut d = vec![0i64; inst.m];
                        add_positional(&mut d, r, 1, v, *rounding);
                        d
                    })
                    .collect();
                Evaluator::Scoring { base, deltas }
            }
            Rule::Copeland(_) | Rule::Maximin => {
                if matches!(inst.rule, Rule::Maximin) && inst.m < 2 {
                    return Err(Error::TooFewCandidates);
                }
                let deltas = rankings
                    .iter()
                    .map(|r| {
                        let mut g = WeightedMajorityGraph::zero(inst.m);
                        g.add_ranking(r, 1);
                        g
                    })
                    .collect();
                Evaluator::Pairwise {
                    base: wmg(&inst.known),
                    deltas,
                    alpha: match inst.rule {
                        Rule::Copeland(a) => Some(a),
                        _ => None,
                    },
                }
            }
            Rule::Stv => Evaluator::Stv {
                known: inst
                    .known
                    .entries()
                    .map(|(r, c)| (r.as_slice(), c))
                    .collect(),
            },
        })
    }

    fn winner(&self, inst: &WavInstance, rankings: &[Ranking], idx: &[usize]) -> CandidateId {
        match self {
            Evaluator::Scoring { base, deltas } => {
                let mut s = base.clone();
                for &i in idx {
                    s.iter_mut().zip(&deltas[i]).for_each(|(a, d)| *a += d);
                }
                pick_winner(&s, &inst.tb)
            }
            Evaluator::Pairwise {
                base,
                deltas,
                alpha,
            } => {
                let mut g = base.clone();
                for &i in idx {
                    g += &deltas[i];
                }
                match alpha {
                    Some(a) => pick_winner(&copeland_from_wmg(&g, *a), &inst.tb),
                    None => pick_winner(&maximin_from_wmg(&g).expect("m ≥ 2"), &inst.tb),
                }
            }
            Evaluator::Stv { known } => {
                let extra = idx.iter().map(|&i| (rankings[i].as_slice(), 1u64));
                run_stv(inst.m, known.iter().copied().chain(extra), &inst.tb, false).0
            }
        }
    }
}

/// Exhaustive search with the default budget.
pub fn wav_bruteforce(inst: &WavInstance) -> Result<WavAnswer> {
    wav_bruteforce_with(inst, &BruteForceConfig::default())
}

/// Tries every anonymous completion in enumeration order and returns the
/// first one that elects the target. The answer does not depend on batching.
pub fn wav_bruteforce_with(inst: &WavInstance, cfg: &BruteForceConfig) -> Result<WavAnswer> {
    inst.validate()?;
    let needed = multiset_count(count_rankings(inst.mode, inst.m), inst.absent);
    if needed > cfg.budget {
        return Err(Error::BudgetExceeded {
            needed,
            budget: cfg.budget,
        });
    }
    let rankings = enumerate_rankings(inst.mode, inst.m)?;
    let eval = Evaluator::new(inst, &rankings)?;
    let wins = |idx: &Vec<usize>| eval.winner(inst, &rankings, idx) == inst.target;

    let mut all = Multisets::new(rankings.len(), inst.absent as usize);
    let found = if cfg.batch == 0 {
        all.find(|idx| wins(idx))
    } else {
        loop {
            let batch: Vec<Vec<usize>> = all.by_ref().take(cfg.batch).collect();
            if batch.is_empty() {
                break None;
            }
            if let Some(pos) = batch.par_iter().position_first(&wins) {
                break Some(batch[pos].clone());
            }
        }
    };
    Ok(match found {
        Some(idx) => WavAnswer::Yes(profile_from_indices(&rankings, &idx, inst.mode, inst.m)),
        None => WavAnswer::No,
    })
}
