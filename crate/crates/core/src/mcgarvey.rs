//! Profiles of top-ℓ ballots with a prescribed weighted majority graph.
//!
//! The full set of top-ℓ rankings is symmetric, so its margins all vanish.
//! Turning one ballot `[b ≻ a ≻ rest]` into `[a ≻ b ≻ rest]` changes only the
//! `a`/`b` comparison, by exactly 2. Stacking `B` copies of the symmetric
//! block gives `B · (m−2)!/(m−ℓ)!` such ballots per ordered pair, which is
//! enough to realize every even, antisymmetric target at once.

use crate::ballots::{wmg, BallotMode, CandidateId, Profile, Ranking, WeightedMajorityGraph};
use crate::error::{Error, Result};
use crate::wav::{enumerate_rankings, falling_factorial};

/// An antisymmetric margin matrix with even entries and a zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WmgTarget(WeightedMajorityGraph);

impl WmgTarget {
    pub fn new(g: WeightedMajorityGraph) -> Result<Self> {
        if !g.is_antisymmetric() {
            return Err(Error::InvalidWmgTarget("not antisymmetric".into()));
        }
        if let Some((a, b, w)) = g.pairs().find(|&(_, _, w)| w % 2 != 0) {
            return Err(Error::InvalidWmgTarget(format!(
                "odd margin {w} between {a} and {b}"
            )));
        }
        Ok(WmgTarget(g))
    }

    pub fn from_matrix(rows: &[Vec<i64>]) -> Result<Self> {
        WmgTarget::new(WeightedMajorityGraph::from_matrix(rows)?)
    }

    pub fn graph(&self) -> &WeightedMajorityGraph {
        &self.0
    }

    pub fn num_candidates(&self) -> usize {
        self.0.num_candidates()
    }
}

fn check_gadget(m: usize, l: usize) -> Result<()> {
    if l < 2 || l > m {
        return Err(Error::InvalidGadget(format!(
            "need 2 ≤ ℓ ≤ m, got ℓ = {l}, m = {m}"
        )));
    }
    Ok(())
}

/// Up to `n` arrangements of `k` distinct entries of `pool`, in lexicographic order.
fn arrangements(pool: &[CandidateId], k: usize, n: usize) -> Vec<Vec<CandidateId>> {
    fn go(
        pool: &[CandidateId],
        k: usize,
        n: usize,
        used: &mut [bool],
        cur: &mut Vec<CandidateId>,
        out: &mut Vec<Vec<CandidateId>>,
    ) {
        if out.len() >= n {
            return;
        }
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..pool.len() {
            if !used[i] {
                used[i] = true;
                cur.push(pool[i]);
                go(pool, k, n, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(
        pool,
        k,
        n,
        &mut vec![false; pool.len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

fn pair_ranking(first: CandidateId, second: CandidateId, rest: &[CandidateId]) -> Ranking {
    let mut v = Vec::with_capacity(rest.len() + 2);
    v.push(first);
    v.push(second);
    v.extend_from_slice(rest);
    Ranking::new(v)
}

/// All `m!/(m−ℓ)!` top-ℓ rankings with one `[b ≻ a ≻ …]` ballot flipped to
/// `[a ≻ b ≻ …]`; the only nonzero margin is ω(a→b) = 2.
pub fn unit_edge_profile(m: usize, l: usize, a: CandidateId, b: CandidateId) -> Result<Profile> {
    check_gadget(m, l)?;
    if a == b || a.0 >= m || b.0 >= m {
        return Err(Error::InvalidGadget(format!("bad edge {a} → {b}")));
    }
    let mode = BallotMode::TopExactly(l);
    let mut p = Profile::from_entries(
        mode,
        m,
        enumerate_rankings(mode, m)?.into_iter().map(|r| (r, 1)),
    )?;
    let pool: Vec<CandidateId> = (0..m)
        .map(CandidateId)
        .filter(|&x| x != a && x != b)
        .collect();
    let rest = arrangements(&pool, l - 2, 1).remove(0);
    let from = pair_ranking(b, a, &rest);
    let to = pair_ranking(a, b, &rest);
    let (nf, nt) = (p.count_of(&from), p.count_of(&to));
    p.set_count(from, nf - 1)?;
    p.set_count(to, nt + 1)?;
    Ok(p)
}

/// A top-ℓ profile whose weighted majority graph equals `target` exactly.
pub fn realize_wmg(target: &WmgTarget, l: usize) -> Result<Profile> {
    let m = target.num_candidates();
    check_gadget(m, l)?;
    let mode = BallotMode::TopExactly(l);
    let g = target.graph();

    // (winner, loser, flips needed)
    let demands: Vec<(CandidateId, CandidateId, u64)> = g
        .pairs()
        .filter(|&(_, _, w)| w != 0)
        .map(|(a, b, w)| {
            if w > 0 {
                (a, b, (w / 2) as u64)
            } else {
                (b, a, (-w / 2) as u64)
            }
        })
        .collect();
    let per_block = falling_factorial(m - 2, l - 2) as u64;
    let blocks = demands
        .iter()
        .map(|&(_, _, k)| k.div_ceil(per_block))
        .max()
        .unwrap_or(0);
    let mut p = Profile::new(mode, m)?;
    if blocks == 0 {
        return Ok(p);
    }
    for r in enumerate_rankings(mode, m)? {
        p.add(r, blocks)?;
    }
    for (a, b, k) in demands {
        let pool: Vec<CandidateId> = (0..m)
            .map(CandidateId)
            .filter(|&x| x != a && x != b)
            .collect();
        let mut left = k;
        for rest in arrangements(&pool, l - 2, k.div_ceil(blocks) as usize) {
            let moved = left.min(blocks);
            let from = pair_ranking(b, a, &rest);
            let to = pair_ranking(a, b, &rest);
            let (nf, nt) = (p.count_of(&from), p.count_of(&to));
            p.set_count(from, nf - moved)?;
            p.set_count(to, nt + moved)?;
            left -= moved;
        }
        debug_assert_eq!(left, 0);
    }
    debug_assert_eq!(&wmg(&p), g);
    Ok(p)
}

/// Vote count of the one-block-per-unit construction: `(Σ_{a<b} |w|/2) · m!/(m−ℓ)!`.
pub fn naive_vote_bound(target: &WmgTarget, l: usize) -> u128 {
    let units: u128 = target
        .graph()
        .pairs()
        .map(|(_, _, w)| (w.unsigned_abs() / 2) as u128)
        .sum();
    units.saturating_mul(falling_factorial(target.num_candidates(), l))
}
