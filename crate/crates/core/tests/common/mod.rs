//! Shared strategies and a deliberately naive reference implementation.
#![allow(dead_code)]

use num_rational::Rational64;
use proptest::prelude::*;
use topwav::{BallotMode, CandidateId, Profile, Ranking, Rounding, Rule, TieBreakOrder};

pub type Votes = Vec<(Vec<usize>, u64)>;

pub fn votes_of(p: &Profile) -> Votes {
    p.entries()
        .map(|(r, n)| (r.iter().map(|c| c.0).collect(), n))
        .collect()
}

pub fn profile(mode: BallotMode, m: usize, votes: &Votes) -> Profile {
    let mut p = Profile::new(mode, m).unwrap();
    for (r, n) in votes {
        p.add(Ranking::from_indices(r.iter().copied()), *n).unwrap();
    }
    p
}

/// A ranking of `len` distinct candidates out of `m`.
pub fn ranking(m: usize, len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..m).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(move |v| v[..len].to_vec())
}

pub fn ballot(mode: BallotMode, m: usize) -> BoxedStrategy<Vec<usize>> {
    match mode {
        BallotMode::TopExactly(l) => ranking(m, l).boxed(),
        BallotMode::UpTo(l) => (1..=l).prop_flat_map(move |k| ranking(m, k)).boxed(),
    }
}

pub fn votes(mode: BallotMode, m: usize, max_entries: usize) -> impl Strategy<Value = Votes> {
    prop::collection::vec((ballot(mode, m), 1..4u64), 0..=max_entries)
}

pub fn mode(m: usize) -> impl Strategy<Value = BallotMode> {
    let top = 1..=m.min(4);
    (top, any::<bool>()).prop_map(|(l, up)| {
        if up {
            BallotMode::UpTo(l)
        } else {
            BallotMode::TopExactly(l)
        }
    })
}

pub fn tiebreak(m: usize) -> impl Strategy<Value = TieBreakOrder> {
    Just((0..m).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| TieBreakOrder::new(v.into_iter().map(CandidateId).collect()).unwrap())
}

/// `(mode, m, votes, tb)` with `2 ≤ m ≤ max_m`.
pub fn election(
    max_m: usize,
    max_entries: usize,
) -> impl Strategy<Value = (BallotMode, usize, Votes, TieBreakOrder)> {
    (2..=max_m).prop_flat_map(move |m| {
        mode(m).prop_flat_map(move |mode| {
            (
                Just(mode),
                Just(m),
                votes(mode, m, max_entries),
                tiebreak(m),
            )
        })
    })
}

// Reference implementation: plain vectors, no sharing with the library.

pub fn ref_margins(m: usize, votes: &Votes) -> Vec<Vec<i64>> {
    let mut w = vec![vec![0i64; m]; m];
    for (r, n) in votes {
        let pos = |c: usize| r.iter().position(|&x| x == c);
        for a in 0..m {
            for b in 0..m {
                let a_over_b = match (pos(a), pos(b)) {
                    (Some(i), Some(j)) => i < j,
                    (Some(_), None) => true,
                    _ => false,
                };
                if a != b && a_over_b {
                    w[a][b] += *n as i64;
                    w[b][a] -= *n as i64;
                }
            }
        }
    }
    w
}

fn best(scores: &[Rational64], tb: &[usize]) -> usize {
    let top = scores.iter().max().unwrap();
    *tb.iter().find(|&&c| scores[c] == *top).unwrap()
}

pub fn ref_copeland(m: usize, votes: &Votes, alpha: Rational64) -> Vec<Rational64> {
    let w = ref_margins(m, votes);
    (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| b != a)
                .map(|b| match w[a][b] {
                    x if x > 0 => Rational64::from_integer(1),
                    0 => alpha,
                    _ => Rational64::from_integer(0),
                })
                .sum()
        })
        .collect()
}

pub fn ref_maximin(m: usize, votes: &Votes) -> Vec<i64> {
    let w = ref_margins(m, votes);
    (0..m)
        .map(|a| (0..m).filter(|&b| b != a).map(|b| w[a][b]).min().unwrap())
        .collect()
}

pub fn ref_scoring(m: usize, votes: &Votes, v: &[u64], rounding: Rounding) -> Vec<i64> {
    let big_l = v.len();
    let mut s = vec![0i64; m];
    for (r, n) in votes {
        for (j, &c) in r.iter().enumerate() {
            let idx = match rounding {
                Rounding::TopExact | Rounding::Up => j,
                Rounding::Down => big_l - r.len() + j,
            };
            s[c] += v[idx] as i64 * *n as i64;
        }
    }
    s
}

/// Returns the elimination order and the winner.
pub fn ref_stv(m: usize, votes: &Votes, tb: &[usize]) -> (Vec<usize>, usize) {
    let mut alive = vec![true; m];
    let mut out = Vec::new();
    while out.len() + 1 < m {
        let mut s = vec![0u64; m];
        for (r, n) in votes {
            if let Some(&c) = r.iter().find(|&&c| alive[c]) {
                s[c] += n;
            }
        }
        let low = (0..m).filter(|&c| alive[c]).map(|c| s[c]).min().unwrap();
        let loser = *tb.iter().rev().find(|&&c| alive[c] && s[c] == low).unwrap();
        alive[loser] = false;
        out.push(loser);
    }
    let w = (0..m).find(|&c| alive[c]).unwrap();
    (out, w)
}

pub fn ref_winner(m: usize, votes: &Votes, rule: &Rule, tb: &[usize]) -> usize {
    match rule {
        Rule::Stv => ref_stv(m, votes, tb).1,
        Rule::Copeland(a) => best(&ref_copeland(m, votes, *a), tb),
        Rule::Maximin => {
            let s: Vec<Rational64> = ref_maximin(m, votes)
                .into_iter()
                .map(Rational64::from_integer)
                .collect();
            best(&s, tb)
        }
        Rule::Scoring(v, r) => {
            let s: Vec<Rational64> = ref_scoring(m, votes, v.as_slice(), *r)
                .into_iter()
                .map(Rational64::from_integer)
                .collect();
            best(&s, tb)
        }
    }
}

pub fn ref_rankings(mode: BallotMode, m: usize) -> Vec<Vec<usize>> {
    let (lo, hi) = match mode {
        BallotMode::TopExactly(l) => (l, l),
        BallotMode::UpTo(l) => (1, l),
    };
    let mut out = Vec::new();
    fn grow(m: usize, prefix: &mut Vec<usize>, lo: usize, hi: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() >= lo {
            out.push(prefix.clone());
        }
        if prefix.len() == hi {
            return;
        }
        for c in 0..m {
            if !prefix.contains(&c) {
                prefix.push(c);
                grow(m, prefix, lo, hi, out);
                prefix.pop();
            }
        }
    }
    grow(m, &mut Vec::new(), lo, hi, &mut out);
    out
}

/// Exhaustive WAV over multisets of `t` rankings, by recursion.
pub fn ref_wav(
    mode: BallotMode,
    m: usize,
    known: &Votes,
    t: usize,
    target: usize,
    rule: &Rule,
    tb: &[usize],
) -> bool {
    let all = ref_rankings(mode, m);
    fn go(
        all: &[Vec<usize>],
        from: usize,
        left: usize,
        acc: &mut Votes,
        check: &dyn Fn(&Votes) -> bool,
    ) -> bool {
        if left == 0 {
            return check(acc);
        }
        for i in from..all.len() {
            acc.push((all[i].clone(), 1));
            let hit = go(all, i, left - 1, acc, check);
            acc.pop();
            if hit {
                return true;
            }
        }
        false
    }
    let check = |extra: &Votes| {
        let mut v = known.clone();
        v.extend(extra.iter().cloned());
        ref_winner(m, &v, rule, tb) == target
    };
    go(&all, 0, t, &mut Vec::new(), &check)
}

pub fn tb_vec(tb: &TieBreakOrder) -> Vec<usize> {
    tb.priority().iter().map(|c| c.0).collect()
}

pub fn binom(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn factorial(n: u128) -> u128 {
    (1..=n).product()
}
