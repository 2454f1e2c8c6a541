use std::cell::OnceCell;
use std::collections::HashSet;
use std::fmt;

use num_rational::Rational64;

use crate::ballots::{wmg, CandidateId, Profile, Ranking, WeightedMajorityGraph};
use crate::error::{Error, Result};
use crate::rules::{copeland_from_wmg, maximin_from_wmg, stv_winner, Rule, StvTrace};
use crate::wav::{
    count_rankings, multiset_count, wav_bruteforce_with, BruteForceConfig, WavAnswer,
    DEFAULT_BUDGET,
};

use super::{
    solve_rxc3_with_budget, witness_from_cover, Bound, Claim, Quantity, ReductionOutput,
    Rxc3Instance, Stage,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub label: String,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    fn new(label: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            label: label.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn skipped(label: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckResult {
            label: label.into(),
            status: Status::Skipped,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    /// No check failed. Skipped checks do not count against the report.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, label: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.label == label)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "ok  ",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            writeln!(f, "{tag} {}: {}", c.label, c.detail)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

/// Lazily derived views of one profile.
struct Measure<'a> {
    red: &'a ReductionOutput,
    profile: &'a Profile,
    graph: OnceCell<WeightedMajorityGraph>,
    trace: OnceCell<StvTrace>,
}

impl<'a> Measure<'a> {
    fn new(red: &'a ReductionOutput, profile: &'a Profile) -> Self {
        Measure {
            red,
            profile,
            graph: OnceCell::new(),
            trace: OnceCell::new(),
        }
    }

    fn graph(&self) -> &WeightedMajorityGraph {
        self.graph.get_or_init(|| wmg(self.profile))
    }

    fn trace(&self) -> &StvTrace {
        self.trace
            .get_or_init(|| stv_winner(self.profile, &self.red.instance.tb).1)
    }

    fn candidate(&self, c: usize) -> Result<CandidateId> {
        let m = self.red.instance.m;
        if c >= m {
            return Err(Error::CandidateOutOfRange {
                candidate: CandidateId(c),
                m,
            });
        }
        Ok(CandidateId(c))
    }

    fn round(&self, round: usize) -> Result<&crate::rules::StvRound> {
        round
            .checked_sub(1)
            .and_then(|r| self.trace().rounds.get(r))
            .ok_or_else(|| Error::ReductionPrecondition(format!("STV has no round {round}")))
    }

    /// The measured value, or `None` when the claim does not apply.
    fn value(&self, q: &Quantity) -> Result<Option<Rational64>> {
        let int = |v: i64| Ok(Some(Rational64::from_integer(v)));
        match q {
            Quantity::Candidates => int(self.red.instance.m as i64),
            Quantity::Absent => int(self.red.instance.absent as i64),
            Quantity::Votes => int(self.profile.num_votes() as i64),
            Quantity::RankingCount(r) => {
                for &c in r {
                    self.candidate(c)?;
                }
                int(self
                    .profile
                    .count_of(&Ranking::from_indices(r.iter().copied())) as i64)
            }
            Quantity::Margin(a, b) => {
                int(self.graph().get(self.candidate(*a)?, self.candidate(*b)?))
            }
            Quantity::MaximinScore(c) => {
                let c = self.candidate(*c)?;
                int(maximin_from_wmg(self.graph())?[c.0])
            }
            Quantity::CopelandScore(c) => {
                let c = self.candidate(*c)?;
                let Rule::Copeland(alpha) = self.red.instance.rule else {
                    return Err(Error::RuleMismatch(
                        "Copeland score under another rule".into(),
                    ));
                };
                Ok(Some(copeland_from_wmg(self.graph(), alpha)[c.0]))
            }
            Quantity::RoundScore { round, candidate } => {
                let c = self.candidate(*candidate)?;
                Ok(self
                    .round(*round)?
                    .score_of(c)
                    .map(|s| Rational64::from_integer(s as i64)))
            }
            Quantity::Standing { round, candidates } => {
                let r = self.round(*round)?;
                let mut n = 0;
                for &c in candidates {
                    n += i64::from(r.score_of(self.candidate(c)?).is_some());
                }
                int(n)
            }
            Quantity::EliminatedIn { round } => int(self.round(*round)?.eliminated.0 as i64),
        }
    }

    fn check(&self, claim: &Claim) -> CheckResult {
        let op = match claim.bound {
            Bound::Exactly => "=",
            Bound::AtMost => "≤",
        };
        match self.value(&claim.quantity) {
            Ok(Some(v)) => CheckResult::new(
                claim.label.clone(),
                claim.holds_for(v),
                format!("measured {v}, expected {op} {}", claim.value),
            ),
            Ok(None) => CheckResult::skipped(claim.label.clone(), "not standing"),
            Err(e) => CheckResult::new(claim.label.clone(), false, e.to_string()),
        }
    }
}

pub fn verify_reduction(red: &ReductionOutput, inst: &Rxc3Instance) -> Result<VerificationReport> {
    verify_reduction_with(red, inst, DEFAULT_BUDGET)
}

/// Re-measures every claim; `budget` caps both the cover search and the
/// exhaustive WAV search on NO instances.
pub fn verify_reduction_with(
    red: &ReductionOutput,
    inst: &Rxc3Instance,
    budget: u128,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    let push = |r: &mut VerificationReport, c: CheckResult| r.checks.push(c);

    push(
        &mut report,
        CheckResult::new(
            "source instance",
            red.source == *inst,
            format!("q = {}", inst.q),
        ),
    );
    let names: HashSet<String> = red.names().into_iter().collect();
    push(
        &mut report,
        CheckResult::new(
            "role map",
            red.roles.len() == red.instance.m && names.len() == red.roles.len(),
            format!(
                "{} roles for {} candidates",
                red.roles.len(),
                red.instance.m
            ),
        ),
    );
    let valid = red.instance.validate();
    push(
        &mut report,
        CheckResult::new(
            "instance",
            valid.is_ok(),
            valid
                .err()
                .map_or_else(|| format!("rule {}", red.instance.rule), |e| e.to_string()),
        ),
    );

    let known = Measure::new(red, &red.instance.known);
    for claim in red.claims.iter().filter(|c| c.stage == Stage::Known) {
        push(&mut report, known.check(claim));
    }

    let witness_claims: Vec<&Claim> = red
        .claims
        .iter()
        .filter(|c| c.stage == Stage::Witness)
        .collect();
    match solve_rxc3_with_budget(inst, budget) {
        Ok(Some(sol)) => {
            let wit = witness_from_cover(red, &sol)?;
            push(
                &mut report,
                CheckResult::new(
                    "witness size",
                    wit.num_votes() == red.instance.absent,
                    format!("{} votes from cover {sol}", wit.num_votes()),
                ),
            );
            let elected = red.instance.verifies(&wit)?;
            push(
                &mut report,
                CheckResult::new("witness elects target", elected, format!("cover {sol}")),
            );
            let merged = red.instance.known.merge(&wit)?;
            let after = Measure::new(red, &merged);
            for claim in witness_claims {
                push(&mut report, after.check(claim));
            }
        }
        Ok(None) => {
            for claim in witness_claims {
                push(
                    &mut report,
                    CheckResult::skipped(claim.label.clone(), "no cover"),
                );
            }
            let needed = multiset_count(
                count_rankings(red.instance.mode, red.instance.m),
                red.instance.absent,
            );
            if needed <= budget {
                let cfg = BruteForceConfig {
                    budget,
                    ..BruteForceConfig::default()
                };
                let answer = wav_bruteforce_with(&red.instance, &cfg)?;
                push(
                    &mut report,
                    CheckResult::new(
                        "no cover, no winning completion",
                        answer == WavAnswer::No,
                        format!("{needed} completions searched"),
                    ),
                );
            } else {
                push(
                    &mut report,
                    CheckResult::skipped(
                        "no cover, no winning completion",
                        format!("{needed} completions exceed the budget of {budget}"),
                    ),
                );
            }
        }
        Err(Error::BudgetExceeded { needed, budget }) => push(
            &mut report,
            CheckResult::skipped(
                "cover search",
                format!("{needed} index sets exceed the budget of {budget}"),
            ),
        ),
        Err(e) => return Err(e),
    }
    Ok(report)
}
