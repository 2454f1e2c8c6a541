//! Top-truncated ballots, anonymous profiles and the weighted majority graph.
//!
//! A [`Ranking`] lists some candidates in order of preference; every candidate
//! it leaves out is tied with the other left-out candidates and below all the
//! listed ones. A [`Profile`] is a multiset of rankings stored with explicit
//! multiplicities, so two profiles compare equal exactly when they hold the
//! same ballots regardless of the order they were added in.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense index of a candidate in `0..m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CandidateId(pub usize);

impl CandidateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<usize> for CandidateId {
    fn from(index: usize) -> Self {
        CandidateId(index)
    }
}

/// Which ballot lengths are admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BallotMode {
    /// Every ballot ranks exactly this many candidates.
    TopExactly(usize),
    /// Every ballot ranks between one and this many candidates.
    UpTo(usize),
}

impl BallotMode {
    /// The parameter ℓ or L.
    pub fn limit(self) -> usize {
        match self {
            BallotMode::TopExactly(l) | BallotMode::UpTo(l) => l,
        }
    }

    pub fn admits_length(self, len: usize) -> bool {
        match self {
            BallotMode::TopExactly(l) => len == l,
            BallotMode::UpTo(l) => (1..=l).contains(&len),
        }
    }

    /// Whether every ballot admissible under `other` is admissible under `self`.
    pub fn absorbs(self, other: BallotMode) -> bool {
        match (self, other) {
            (BallotMode::TopExactly(a), BallotMode::TopExactly(b)) => a == b,
            (BallotMode::UpTo(a), BallotMode::TopExactly(b)) => b >= 1 && b <= a,
            (BallotMode::UpTo(a), BallotMode::UpTo(b)) => b <= a,
            (BallotMode::TopExactly(_), BallotMode::UpTo(_)) => false,
        }
    }

    fn check(self, m: usize) -> Result<()> {
        let l = self.limit();
        if l == 0 || l > m {
            return Err(Error::ModeExceedsCandidates {
                mode: self.to_string(),
                m,
            });
        }
        Ok(())
    }
}

impl fmt::Display for BallotMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BallotMode::TopExactly(l) => write!(f, "top-{l}"),
            BallotMode::UpTo(l) => write!(f, "up-to-{l}"),
        }
    }
}

/// An ordered list of distinct candidates, most preferred first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ranking(Vec<CandidateId>);

impl Ranking {
    /// Wraps a list without validation; see [`validate_ranking`].
    pub fn new(ranked: Vec<CandidateId>) -> Self {
        Ranking(ranked)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Ranking(indices.into_iter().map(CandidateId).collect())
    }

    pub fn as_slice(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<CandidateId> {
        self.0.first().copied()
    }

    /// 0-based position of `c`, or `None` when `c` is not listed.
    pub fn position(&self, c: CandidateId) -> Option<usize> {
        self.0.iter().position(|&x| x == c)
    }

    pub fn contains(&self, c: CandidateId) -> bool {
        self.0.contains(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = CandidateId> + '_ {
        self.0.iter().copied()
    }
}

impl From<Vec<CandidateId>> for Ranking {
    fn from(v: Vec<CandidateId>) -> Self {
        Ranking(v)
    }
}

impl fmt::Display for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " > ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Checks that `r` is a well-formed ballot for `mode` over `m` candidates.
pub fn validate_ranking(r: &Ranking, mode: BallotMode, m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    for &c in r.as_slice() {
        if c.0 >= m {
            return Err(Error::CandidateOutOfRange { candidate: c, m });
        }
        if std::mem::replace(&mut seen[c.0], true) {
            return Err(Error::DuplicateCandidate { candidate: c });
        }
    }
    if !mode.admits_length(r.len()) {
        return Err(Error::RankingLength {
            len: r.len(),
            mode: mode.to_string(),
        });
    }
    Ok(())
}

/// Outcome of a pairwise comparison inside a single ballot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preference {
    PrefersA,
    PrefersB,
    Tie,
}

/// Compares `a` and `b` within `r`; unlisted candidates sit tied below every listed one.
pub fn prefers(r: &Ranking, a: CandidateId, b: CandidateId) -> Result<Preference> {
    if a == b {
        return Err(Error::SelfComparison);
    }
    Ok(match (r.position(a), r.position(b)) {
        (Some(pa), Some(pb)) if pa < pb => Preference::PrefersA,
        (Some(_), Some(_)) => Preference::PrefersB,
        (Some(_), None) => Preference::PrefersA,
        (None, Some(_)) => Preference::PrefersB,
        (None, None) => Preference::Tie,
    })
}

/// A multiset of ballots over `m` candidates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Profile {
    mode: BallotMode,
    m: usize,
    entries: BTreeMap<Ranking, u64>,
}

impl Profile {
    pub fn new(mode: BallotMode, m: usize) -> Result<Self> {
        mode.check(m)?;
        Ok(Profile {
            mode,
            m,
            entries: BTreeMap::new(),
        })
    }

    pub fn from_entries<I>(mode: BallotMode, m: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Ranking, u64)>,
    {
        let mut p = Profile::new(mode, m)?;
        for (r, count) in entries {
            p.add(r, count)?;
        }
        Ok(p)
    }

    /// Convenience constructor from index lists, mostly for tests and examples.
    pub fn from_votes(mode: BallotMode, m: usize, votes: &[(&[usize], u64)]) -> Result<Self> {
        Profile::from_entries(
            mode,
            m,
            votes
                .iter()
                .map(|(r, c)| (Ranking::from_indices(r.iter().copied()), *c)),
        )
    }

    pub fn mode(&self) -> BallotMode {
        self.mode
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    /// Adds `count` copies of `r`. A zero count is a no-op.
    pub fn add(&mut self, r: Ranking, count: u64) -> Result<()> {
        validate_ranking(&r, self.mode, self.m)?;
        if count > 0 {
            *self.entries.entry(r).or_insert(0) += count;
        }
        Ok(())
    }

    /// Overwrites the multiplicity of `r`; zero removes it.
    pub fn set_count(&mut self, r: Ranking, count: u64) -> Result<()> {
        validate_ranking(&r, self.mode, self.m)?;
        if count == 0 {
            self.entries.remove(&r);
        } else {
            self.entries.insert(r, count);
        }
        Ok(())
    }

    pub fn count_of(&self, r: &Ranking) -> u64 {
        self.entries.get(r).copied().unwrap_or(0)
    }

    /// Distinct rankings with their multiplicities, in ranking order.
    pub fn entries(&self) -> impl Iterator<Item = (&Ranking, u64)> + '_ {
        self.entries.iter().map(|(r, &c)| (r, c))
    }

    pub fn num_distinct(&self) -> usize {
        self.entries.len()
    }

    /// Total number of votes, counting multiplicities.
    pub fn num_votes(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Re-tags the profile with a broader mode (e.g. top-ℓ votes read as up-to-L).
    pub fn with_mode(&self, mode: BallotMode) -> Result<Self> {
        mode.check(self.m)?;
        let mut p = Profile::new(mode, self.m)?;
        for (r, c) in self.entries() {
            p.add(r.clone(), c)?;
        }
        Ok(p)
    }

    /// Multiset union; `other` must use ballots admissible under `self`'s mode.
    pub fn merge(&self, other: &Profile) -> Result<Profile> {
        if self.m != other.m {
            return Err(Error::ProfileMismatch(format!(
                "{} vs {} candidates",
                self.m, other.m
            )));
        }
        if !self.mode.absorbs(other.mode) {
            return Err(Error::ProfileMismatch(format!(
                "{} ballots cannot join a {} profile",
                other.mode, self.mode
            )));
        }
        let mut out = self.clone();
        for (r, &c) in &other.entries {
            *out.entries.entry(r.clone()).or_insert(0) += c;
        }
        Ok(out)
    }

    /// Applies the candidate relabelling `perm` (candidate `i` becomes `perm[i]`).
    pub fn relabel(&self, perm: &[CandidateId]) -> Result<Profile> {
        let mut p = Profile::new(self.mode, self.m)?;
        for (r, c) in self.entries() {
            p.add(Ranking(r.iter().map(|x| perm[x.0]).collect()), c)?;
        }
        Ok(p)
    }
}

/// Multiset union of two profiles.
pub fn merge(p: &Profile, q: &Profile) -> Result<Profile> {
    p.merge(q)
}

/// Antisymmetric matrix of pairwise margins ω(a→b).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedMajorityGraph {
    m: usize,
    w: Vec<i64>,
}

impl WeightedMajorityGraph {
    pub fn zero(m: usize) -> Self {
        WeightedMajorityGraph {
            m,
            w: vec![0; m * m],
        }
    }

    /// Builds a graph from a full matrix, checking antisymmetry.
    pub fn from_matrix(rows: &[Vec<i64>]) -> Result<Self> {
        let m = rows.len();
        let mut g = WeightedMajorityGraph::zero(m);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidWmgTarget("matrix is not square".into()));
            }
            g.w[a * m..(a + 1) * m].copy_from_slice(row);
        }
        if !g.is_antisymmetric() {
            return Err(Error::InvalidWmgTarget(
                "matrix is not antisymmetric".into(),
            ));
        }
        Ok(g)
    }

    pub fn num_candidates(&self) -> usize {
        self.m
    }

    pub fn get(&self, a: CandidateId, b: CandidateId) -> i64 {
        self.w[a.0 * self.m + b.0]
    }

    /// Adds `weight` to ω(a→b) and subtracts it from ω(b→a).
    pub fn add_edge(&mut self, a: CandidateId, b: CandidateId, weight: i64) {
        debug_assert_ne!(a, b);
        self.w[a.0 * self.m + b.0] += weight;
        self.w[b.0 * self.m + a.0] -= weight;
    }

    /// Adds the pairwise contribution of `count` copies of `r`.
    pub fn add_ranking(&mut self, r: &Ranking, count: i64) {
        let m = self.m;
        let mut listed = vec![false; m];
        for (i, &a) in r.as_slice().iter().enumerate() {
            for &b in &r.as_slice()[i + 1..] {
                self.w[a.0 * m + b.0] += count;
                self.w[b.0 * m + a.0] -= count;
            }
            listed[a.0] = true;
        }
        for &a in r.as_slice() {
            for b in (0..m).filter(|&b| !listed[b]) {
                self.w[a.0 * m + b] += count;
                self.w[b * m + a.0] -= count;
            }
        }
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.m).all(|a| {
            self.w[a * self.m + a] == 0
                && (0..a).all(|b| self.w[a * self.m + b] == -self.w[b * self.m + a])
        })
    }

    /// Row `a` of the matrix: ω(a→b) for every b (including the zero diagonal).
    pub fn row(&self, a: CandidateId) -> &[i64] {
        &self.w[a.0 * self.m..(a.0 + 1) * self.m]
    }

    pub fn is_zero(&self) -> bool {
        self.w.iter().all(|&x| x == 0)
    }

    /// Strictly-upper-triangle entries `(a, b, ω(a→b))` with `a < b`.
    pub fn pairs(&self) -> impl Iterator<Item = (CandidateId, CandidateId, i64)> + '_ {
        (0..self.m).flat_map(move |a| {
            (a + 1..self.m).map(move |b| (CandidateId(a), CandidateId(b), self.w[a * self.m + b]))
        })
    }

    pub fn to_matrix(&self) -> Vec<Vec<i64>> {
        self.w.chunks(self.m.max(1)).map(|r| r.to_vec()).collect()
    }
}

impl Index<(CandidateId, CandidateId)> for WeightedMajorityGraph {
    type Output = i64;

    fn index(&self, (a, b): (CandidateId, CandidateId)) -> &i64 {
        &self.w[a.0 * self.m + b.0]
    }
}

impl AddAssign<&WeightedMajorityGraph> for WeightedMajorityGraph {
    fn add_assign(&mut self, rhs: &WeightedMajorityGraph) {
        assert_eq!(self.m, rhs.m, "graphs over different candidate sets");
        for (x, y) in self.w.iter_mut().zip(&rhs.w) {
            *x += y;
        }
    }
}

impl Add for &WeightedMajorityGraph {
    type Output = WeightedMajorityGraph;

    fn add(self, rhs: &WeightedMajorityGraph) -> WeightedMajorityGraph {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &WeightedMajorityGraph {
    type Output = WeightedMajorityGraph;

    fn sub(self, rhs: &WeightedMajorityGraph) -> WeightedMajorityGraph {
        self + &(-rhs)
    }
}

impl Neg for &WeightedMajorityGraph {
    type Output = WeightedMajorityGraph;

    fn neg(self) -> WeightedMajorityGraph {
        WeightedMajorityGraph {
            m: self.m,
            w: self.w.iter().map(|x| -x).collect(),
        }
    }
}

/// Pairwise margins of a profile.
pub fn wmg(p: &Profile) -> WeightedMajorityGraph {
    let mut g = WeightedMajorityGraph::zero(p.m);
    for (r, c) in p.entries() {
        g.add_ranking(r, c as i64);
    }
    g
}

/// Total priority over candidates; earlier entries win ties.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TieBreakOrder {
    priority: Vec<CandidateId>,
    position: Vec<usize>,
}

impl TieBreakOrder {
    pub fn new(priority: Vec<CandidateId>) -> Result<Self> {
        let m = priority.len();
        let mut position = vec![usize::MAX; m];
        for (i, c) in priority.iter().enumerate() {
            if c.0 >= m || position[c.0] != usize::MAX {
                return Err(Error::InvalidTieBreak { m });
            }
            position[c.0] = i;
        }
        Ok(TieBreakOrder { priority, position })
    }

    /// 0 ≻ 1 ≻ … ≻ m−1.
    pub fn lexicographic(m: usize) -> Self {
        TieBreakOrder {
            priority: (0..m).map(CandidateId).collect(),
            position: (0..m).collect(),
        }
    }

    pub fn num_candidates(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[CandidateId] {
        &self.priority
    }

    pub fn position(&self, c: CandidateId) -> usize {
        self.position[c.0]
    }

    /// True when `a` wins a tie against `b`.
    pub fn favors(&self, a: CandidateId, b: CandidateId) -> bool {
        self.position[a.0] < self.position[b.0]
    }

    pub fn relabel(&self, perm: &[CandidateId]) -> Self {
        TieBreakOrder::new(self.priority.iter().map(|c| perm[c.0]).collect())
            .expect("relabelling a permutation yields a permutation")
    }
}
