//! Winner computation for STV, Copeland^α, Maximin and positional scoring
//! rules over top-truncated profiles.
//!
//! Every rule is resolute: score ties are broken by a [`TieBreakOrder`], whose
//! earlier entries are favored. Under STV the favored candidate also survives
//! an elimination tie.

use std::fmt;

use num_rational::Rational64;

use crate::ballots::{
    wmg, BallotMode, CandidateId, Profile, Ranking, TieBreakOrder, WeightedMajorityGraph,
};
use crate::error::{Error, Result};

/// Non-increasing, non-negative positional scores `a₁ ≥ a₂ ≥ … ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScoringVector(Vec<u64>);

impl ScoringVector {
    pub fn new(scores: Vec<u64>) -> Result<Self> {
        if scores.is_empty() {
            return Err(Error::InvalidScoringVector("empty vector".into()));
        }
        if scores.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidScoringVector(format!(
                "{scores:?} is not non-increasing"
            )));
        }
        Ok(ScoringVector(scores))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn top(&self) -> u64 {
        self.0[0]
    }

    /// The common value of `a₂..a_k` when all of them agree (`Some(0)` for k = 1).
    pub fn uniform_tail(&self) -> Option<u64> {
        match self.0.get(1..) {
            Some([]) | None => Some(0),
            Some(tail) if tail.iter().all(|&x| x == tail[0]) => Some(tail[0]),
            _ => None,
        }
    }

    /// Score of the candidate at 0-based `position` on a ballot of length `len`.
    pub fn position_score(&self, rounding: Rounding, len: usize, position: usize) -> u64 {
        debug_assert!(position < len && len <= self.0.len());
        match rounding {
            Rounding::TopExact | Rounding::Up => self.0[position],
            Rounding::Down => self.0[self.0.len() - len + position],
        }
    }
}

impl fmt::Display for ScoringVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// How a truncated ballot maps onto the scoring vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rounding {
    /// Top-ℓ ballots: every ballot has full length.
    TopExact,
    /// j-th of an ℓ-long ballot scores `a_j`.
    Up,
    /// j-th of an ℓ-long ballot scores `a_{L−ℓ+j}`.
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Stv,
    Copeland(Rational64),
    Maximin,
    Scoring(ScoringVector, Rounding),
}

impl Rule {
    pub fn copeland(alpha: Rational64) -> Result<Self> {
        if alpha < Rational64::from_integer(0) || alpha > Rational64::from_integer(1) {
            return Err(Error::InvalidAlpha(alpha.to_string()));
        }
        Ok(Rule::Copeland(alpha))
    }

    pub fn scoring(vector: Vec<u64>, rounding: Rounding) -> Result<Self> {
        Ok(Rule::Scoring(ScoringVector::new(vector)?, rounding))
    }

    /// Checks that the rule can be evaluated on profiles in `mode`.
    pub fn check(&self, mode: BallotMode) -> Result<()> {
        match self {
            Rule::Copeland(alpha) => {
                if *alpha < Rational64::from_integer(0) || *alpha > Rational64::from_integer(1) {
                    return Err(Error::InvalidAlpha(alpha.to_string()));
                }
            }
            Rule::Scoring(v, rounding) => {
                if v.len() != mode.limit() {
                    return Err(Error::RuleMismatch(format!(
                        "scoring vector of length {} under {mode}",
                        v.len()
                    )));
                }
                match (mode, rounding) {
                    (BallotMode::TopExactly(_), Rounding::TopExact)
                    | (BallotMode::UpTo(_), Rounding::Up | Rounding::Down) => {}
                    (BallotMode::TopExactly(_), _) => {
                        return Err(Error::RuleMismatch(
                            "up/down rounding needs up-to-L ballots".into(),
                        ))
                    }
                    (BallotMode::UpTo(_), Rounding::TopExact) => {
                        return Err(Error::RuleMismatch(
                            "up-to-L ballots need an up or down rounding".into(),
                        ))
                    }
                }
            }
            Rule::Stv | Rule::Maximin => {}
        }
        Ok(())
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Stv => write!(f, "stv"),
            Rule::Copeland(a) => write!(f, "copeland:{a}"),
            Rule::Maximin => write!(f, "maximin"),
            Rule::Scoring(v, Rounding::TopExact) => write!(f, "score:{v}"),
            Rule::Scoring(v, Rounding::Up) => write!(f, "score:{v}:up"),
            Rule::Scoring(v, Rounding::Down) => write!(f, "score:{v}:down"),
        }
    }
}

/// One STV round: plurality score of every surviving candidate, then the loser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StvRound {
    pub scores: Vec<(CandidateId, u64)>,
    pub eliminated: CandidateId,
}

impl StvRound {
    pub fn score_of(&self, c: CandidateId) -> Option<u64> {
        self.scores.iter().find(|(x, _)| *x == c).map(|&(_, s)| s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StvTrace {
    pub rounds: Vec<StvRound>,
}

impl StvTrace {
    pub fn eliminations(&self) -> Vec<CandidateId> {
        self.rounds.iter().map(|r| r.eliminated).collect()
    }
}

/// Runs STV over weighted ballots. Exhausted ballots count for nobody; when
/// every survivor is at zero the tie-break alone picks the loser.
pub(crate) fn run_stv<'a, I>(
    m: usize,
    ballots: I,
    tb: &TieBreakOrder,
    record: bool,
) -> (CandidateId, StvTrace)
where
    I: IntoIterator<Item = (&'a [CandidateId], u64)>,
{
    let ballots: Vec<(&[CandidateId], u64)> = ballots.into_iter().collect();
    let mut alive = vec![true; m];
    // index of each ballot's highest surviving entry; only ever moves forward
    let mut cursor = vec![0usize; ballots.len()];
    let mut trace = StvTrace::default();
    let mut scores = vec![0u64; m];

    for _ in 1..m {
        scores.iter_mut().for_each(|s| *s = 0);
        for (i, (ranked, count)) in ballots.iter().enumerate() {
            let mut k = cursor[i];
            while k < ranked.len() && !alive[ranked[k].0] {
                k += 1;
            }
            cursor[i] = k;
            if k < ranked.len() {
                scores[ranked[k].0] += count;
            }
        }
        let loser = (0..m)
            .filter(|&c| alive[c])
            .min_by_key(|&c| (scores[c], std::cmp::Reverse(tb.position(CandidateId(c)))))
            .map(CandidateId)
            .expect("at least two candidates survive");
        if record {
            trace.rounds.push(StvRound {
                scores: (0..m)
                    .filter(|&c| alive[c])
                    .map(|c| (CandidateId(c), scores[c]))
                    .collect(),
                eliminated: loser,
            });
        }
        alive[loser.0] = false;
    }
    let winner = (0..m).find(|&c| alive[c]).map(CandidateId).expect("m ≥ 1");
    (winner, trace)
}

/// STV winner together with the full elimination trace.
pub fn stv_winner(p: &Profile, tb: &TieBreakOrder) -> (CandidateId, StvTrace) {
    run_stv(
        p.num_candidates(),
        p.entries().map(|(r, c)| (r.as_slice(), c)),
        tb,
        true,
    )
}

/// Copeland^α score of every candidate from a precomputed graph.
pub fn copeland_from_wmg(g: &WeightedMajorityGraph, alpha: Rational64) -> Vec<Rational64> {
    let m = g.num_candidates();
    (0..m)
        .map(|a| {
            let row = g.row(CandidateId(a));
            let wins = (0..m).filter(|&b| b != a && row[b] > 0).count() as i64;
            let ties = (0..m).filter(|&b| b != a && row[b] == 0).count() as i64;
            Rational64::from_integer(wins) + alpha * ties
        })
        .collect()
}

pub fn copeland_scores(p: &Profile, alpha: Rational64) -> Vec<Rational64> {
    copeland_from_wmg(&wmg(p), alpha)
}

/// Min-score of every candidate: its weakest outgoing margin.
pub fn maximin_from_wmg(g: &WeightedMajorityGraph) -> Result<Vec<i64>> {
    let m = g.num_candidates();
    if m < 2 {
        return Err(Error::TooFewCandidates);
    }
    Ok((0..m)
        .map(|a| {
            let row = g.row(CandidateId(a));
            (0..m).filter(|&b| b != a).map(|b| row[b]).min().unwrap()
        })
        .collect())
}

pub fn maximin_scores(p: &Profile) -> Result<Vec<i64>> {
    maximin_from_wmg(&wmg(p))
}

/// Adds the positional scores of `count` copies of `r` into `scores`.
pub(crate) fn add_positional(
    scores: &mut [i64],
    r: &Ranking,
    count: u64,
    v: &ScoringVector,
    rounding: Rounding,
) {
    let len = r.len();
    for (j, c) in r.iter().enumerate() {
        scores[c.0] += (v.position_score(rounding, len, j) * count) as i64;
    }
}

pub fn scoring_scores(p: &Profile, v: &ScoringVector, rounding: Rounding) -> Result<Vec<i64>> {
    Rule::Scoring(v.clone(), rounding).check(p.mode())?;
    let mut scores = vec![0i64; p.num_candidates()];
    for (r, c) in p.entries() {
        add_positional(&mut scores, r, c, v, rounding);
    }
    Ok(scores)
}

/// The tie-break-most-favored candidate among those with maximal score.
pub fn pick_winner<T: Ord>(scores: &[T], tb: &TieBreakOrder) -> CandidateId {
    (0..scores.len())
        .max_by(|&a, &b| {
            scores[a].cmp(&scores[b]).then_with(|| {
                tb.position(CandidateId(b))
                    .cmp(&tb.position(CandidateId(a)))
            })
        })
        .map(CandidateId)
        .expect("at least one candidate")
}

/// Winner of `p` under `rule`, ties resolved by `tb`.
pub fn winner(p: &Profile, rule: &Rule, tb: &TieBreakOrder) -> Result<CandidateId> {
    rule.check(p.mode())?;
    if tb.num_candidates() != p.num_candidates() {
        return Err(Error::InvalidTieBreak {
            m: p.num_candidates(),
        });
    }
    Ok(match rule {
        Rule::Stv => stv_winner(p, tb).0,
        Rule::Copeland(alpha) => pick_winner(&copeland_scores(p, *alpha), tb),
        Rule::Maximin => pick_winner(&maximin_scores(p)?, tb),
        Rule::Scoring(v, rounding) => pick_winner(&scoring_scores(p, v, *rounding)?, tb),
    })
}
