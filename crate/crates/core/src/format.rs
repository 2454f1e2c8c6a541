//! Text formats: ballot files, RXC3 files, rule specs and reduction sidecars.
//!
//! A ballot file is line based; `#` starts a comment and blank lines are
//! ignored.
//!
//! ```text
//! candidates 1 2 3 4
//! mode up-to-l 3
//! tiebreak 1 2 3 4
//! 2: 1 > 3
//! 1: 2 > 1 > 4
//! ```
//!
//! `mode` is `top-l <ℓ>` or `up-to-l <L>`; `tiebreak` is optional and
//! defaults to the `candidates` order. Each ballot line is `<count>: ` and a
//! `>`-separated ranking. Repeated rankings add up.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::ballots::{BallotMode, CandidateId, Profile, Ranking, TieBreakOrder};
use crate::error::{Error, Result};
use crate::reductions::{Claim, ReductionKind, ReductionOutput, Role, Rxc3Instance};
use crate::rules::{Rounding, Rule};
use crate::wav::WavInstance;

/// A named profile with its tie-break order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallotFile {
    pub names: Vec<String>,
    pub profile: Profile,
    pub tb: TieBreakOrder,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.contains(['>', ':', '#']) && !name.contains(char::is_whitespace)
}

fn name_index(names: &[String]) -> HashMap<&str, usize> {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect()
}

impl BallotFile {
    pub fn new(names: Vec<String>, profile: Profile, tb: TieBreakOrder) -> Result<Self> {
        if names.len() != profile.num_candidates() || tb.num_candidates() != names.len() {
            return Err(Error::ProfileMismatch(format!(
                "{} names for {} candidates",
                names.len(),
                profile.num_candidates()
            )));
        }
        if let Some(bad) = names.iter().find(|n| !valid_name(n)) {
            return Err(Error::parse(0, format!("invalid candidate name {bad:?}")));
        }
        if name_index(&names).len() != names.len() {
            return Err(Error::parse(0, "candidate names must be unique"));
        }
        Ok(BallotFile { names, profile, tb })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut names: Option<Vec<String>> = None;
        let mut mode: Option<BallotMode> = None;
        let mut tiebreak: Option<(usize, Vec<String>)> = None;
        let mut ballots: Vec<(usize, u64, Vec<String>)> = Vec::new();

        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("candidates") => {
                    if names.is_some() {
                        return Err(Error::parse(line_no, "candidates given twice"));
                    }
                    let list: Vec<String> = words.map(str::to_string).collect();
                    if list.is_empty() {
                        return Err(Error::parse(line_no, "no candidates listed"));
                    }
                    names = Some(list);
                }
                Some("mode") => {
                    let kind = words.next();
                    let n: usize = words
                        .next()
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| Error::parse(line_no, "mode needs a ballot length"))?;
                    mode = Some(match kind {
                        Some("top-l") => BallotMode::TopExactly(n),
                        Some("up-to-l") => BallotMode::UpTo(n),
                        _ => return Err(Error::parse(line_no, "mode is top-l or up-to-l")),
                    });
                    if words.next().is_some() {
                        return Err(Error::parse(line_no, "trailing text after mode"));
                    }
                }
                Some("tiebreak") => {
                    tiebreak = Some((line_no, words.map(str::to_string).collect()));
                }
                _ => {
                    let (count, ranking) = line
                        .split_once(':')
                        .ok_or_else(|| Error::parse(line_no, "expected `<count>: a > b > …`"))?;
                    let count: u64 = count.trim().parse().map_err(|_| {
                        Error::parse(line_no, format!("bad count {:?}", count.trim()))
                    })?;
                    let ranked: Vec<String> =
                        ranking.split('>').map(|s| s.trim().to_string()).collect();
                    ballots.push((line_no, count, ranked));
                }
            }
        }

        let names = names.ok_or_else(|| Error::parse(0, "missing `candidates` line"))?;
        let mode = mode.ok_or_else(|| Error::parse(0, "missing `mode` line"))?;
        let index = name_index(&names);
        if index.len() != names.len() {
            return Err(Error::parse(0, "candidate names must be unique"));
        }
        let lookup = |line: usize, n: &str| {
            index
                .get(n)
                .copied()
                .ok_or_else(|| Error::parse(line, format!("unknown candidate {n:?}")))
        };
        let m = names.len();
        let tb = match tiebreak {
            None => TieBreakOrder::lexicographic(m),
            Some((line, order)) => {
                let ids = order
                    .iter()
                    .map(|n| lookup(line, n).map(CandidateId))
                    .collect::<Result<Vec<_>>>()?;
                TieBreakOrder::new(ids).map_err(|e| Error::parse(line, e.to_string()))?
            }
        };
        let mut profile = Profile::new(mode, m).map_err(|e| Error::parse(0, e.to_string()))?;
        for (line, count, ranked) in ballots {
            let ids = ranked
                .iter()
                .map(|n| lookup(line, n))
                .collect::<Result<Vec<_>>>()?;
            profile
                .add(Ranking::from_indices(ids), count)
                .map_err(|e| Error::parse(line, e.to_string()))?;
        }
        BallotFile::new(names, profile, tb)
    }

    pub fn index_of(&self, name: &str) -> Option<CandidateId> {
        self.names.iter().position(|n| n == name).map(CandidateId)
    }

    pub fn name(&self, c: CandidateId) -> &str {
        &self.names[c.0]
    }

    pub fn format_ranking(&self, r: &Ranking) -> String {
        r.iter()
            .map(|c| self.name(c))
            .collect::<Vec<_>>()
            .join(" > ")
    }

    /// `<count>: a > b` lines for any profile over these candidates.
    pub fn ballot_lines(&self, p: &Profile) -> String {
        let mut out = String::new();
        for (r, n) in p.entries() {
            let _ = writeln!(out, "{n}: {}", self.format_ranking(r));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mode = match self.profile.mode() {
            BallotMode::TopExactly(l) => format!("top-l {l}"),
            BallotMode::UpTo(l) => format!("up-to-l {l}"),
        };
        let tb: Vec<&str> = self.tb.priority().iter().map(|&c| self.name(c)).collect();
        format!(
            "candidates {}\nmode {mode}\ntiebreak {}\n{}",
            self.names.join(" "),
            tb.join(" "),
            self.ballot_lines(&self.profile)
        )
    }
}

/// `q <n>` followed by `set a b c` lines, elements numbered from 1.
pub fn parse_rxc3(text: &str) -> Result<Rxc3Instance> {
    let mut q = None;
    let mut sets = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let nums = words[1..]
            .iter()
            .map(|w| w.parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::parse(line_no, "expected positive integers"))?;
        match (words[0], nums.as_slice()) {
            ("q", &[n]) => q = Some(n),
            ("set", &[a, b, c]) => sets.push([a, b, c]),
            ("set", _) => return Err(Error::parse(line_no, "a set has exactly three elements")),
            _ => return Err(Error::parse(line_no, "expected `q <n>` or `set a b c`")),
        }
    }
    let q = q.ok_or_else(|| Error::parse(0, "missing `q` line"))?;
    Rxc3Instance::from_one_based(q, &sets)
}

pub fn print_rxc3(inst: &Rxc3Instance) -> String {
    let mut out = format!("q {}\n", inst.q);
    for s in &inst.sets {
        let _ = writeln!(out, "set {} {} {}", s[0] + 1, s[1] + 1, s[2] + 1);
    }
    out
}

/// Reads `1/2`, `0.5` or `1`.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = || Error::parse(0, format!("not a number: {s:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole: i64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let den = 10i64.pow(frac.len() as u32);
        let num: i64 = frac.parse().map_err(|_| bad())?;
        return Ok(Rational64::from_integer(whole) + Rational64::new(num, den));
    }
    Rational64::from_str(s).map_err(|_| bad())
}

/// `stv`, `maximin`, `copeland:<α>` or `score:<v1,…,vk>[:up|:down]`.
pub fn parse_rule(spec: &str) -> Result<Rule> {
    let mut parts = spec.split(':');
    let head = parts.next().unwrap_or("");
    let rest: Vec<&str> = parts.collect();
    let bad = |msg: &str| Error::parse(0, format!("rule {spec:?}: {msg}"));
    match (head, rest.as_slice()) {
        ("stv", []) => Ok(Rule::Stv),
        ("maximin", []) => Ok(Rule::Maximin),
        ("copeland", [alpha]) => Rule::copeland(parse_rational(alpha)?),
        ("score", [vector, tail @ ..]) => {
            let v = vector
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("scores are non-negative integers"))?;
            let rounding = match tail {
                [] => Rounding::TopExact,
                ["up"] => Rounding::Up,
                ["down"] => Rounding::Down,
                _ => return Err(bad("rounding is `up` or `down`")),
            };
            Rule::scoring(v, rounding)
        }
        _ => Err(bad(
            "expected stv, maximin, copeland:<α> or score:<v1,…>[:up|:down]",
        )),
    }
}

/// JSON companion of a generated ballot file: what each candidate stands
/// for, the encoded cover instance, and the claims to check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub kind: ReductionKind,
    pub absent: u64,
    pub target: String,
    pub roles: Vec<(String, Role)>,
    /// Elements numbered from 1.
    pub q: usize,
    pub sets: Vec<[usize; 3]>,
    pub claims: Vec<Claim>,
}

impl Sidecar {
    pub fn from_reduction(red: &ReductionOutput) -> Self {
        let names = red.names();
        Sidecar {
            kind: red.kind,
            absent: red.instance.absent,
            target: names[red.instance.target.0].clone(),
            roles: names.into_iter().zip(red.roles.iter().copied()).collect(),
            q: red.source.q,
            sets: red.source.sets.iter().map(|s| s.map(|x| x + 1)).collect(),
            claims: red.claims.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sidecar serializes") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
    }

    /// Reassembles the reduction from its ballot file.
    pub fn attach(&self, file: &BallotFile) -> Result<ReductionOutput> {
        let names: Vec<&str> = self.roles.iter().map(|(n, _)| n.as_str()).collect();
        if names != file.names.iter().map(String::as_str).collect::<Vec<_>>() {
            return Err(Error::ProfileMismatch(
                "sidecar roles do not match the ballot file's candidates".into(),
            ));
        }
        let target = file
            .index_of(&self.target)
            .ok_or_else(|| Error::ProfileMismatch(format!("unknown target {}", self.target)))?;
        let rule = match self.kind {
            ReductionKind::Stv => Rule::Stv,
            ReductionKind::Maximin => Rule::Maximin,
            ReductionKind::Copeland(alpha) => Rule::copeland(alpha)?,
        };
        let instance = WavInstance::new(
            file.profile.clone(),
            self.absent,
            target,
            rule,
            file.tb.clone(),
        )?;
        Ok(ReductionOutput {
            kind: self.kind,
            source: Rxc3Instance::from_one_based(self.q, &self.sets)?,
            instance,
            roles: self.roles.iter().map(|&(_, r)| r).collect(),
            claims: self.claims.clone(),
        })
    }
}

/// The ballot file of a generated instance.
pub fn reduction_ballot_file(red: &ReductionOutput) -> Result<BallotFile> {
    BallotFile::new(
        red.names(),
        red.instance.known.clone(),
        red.instance.tb.clone(),
    )
}
