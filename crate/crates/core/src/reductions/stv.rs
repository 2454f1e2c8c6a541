use crate::ballots::{BallotMode, CandidateId, Profile, Ranking, TieBreakOrder};
use crate::error::Result;
use crate::rules::Rule;
use crate::wav::WavInstance;

use super::{
    check_divisible, check_mode, check_solution, validate_rxc3, Claim, Quantity, ReductionKind,
    ReductionOutput, Role, Rxc3Instance, Rxc3Solution, Stage,
};

// Layout: c, w, d_0..d_q, then b_1, b̄_1, …, b_q, b̄_q. The tie-break follows it.
const C: usize = 0;
const W: usize = 1;

fn d(j: usize) -> usize {
    2 + j
}

fn b(q: usize, i: usize) -> usize {
    q + 1 + 2 * i
}

fn bbar(q: usize, i: usize) -> usize {
    q + 2 + 2 * i
}

/// Cuts a printed prefix to `l` entries, or pads it with the lowest-priority
/// candidates not yet listed.
fn fit(prefix: &[usize], l: usize, m: usize) -> Vec<usize> {
    let mut r: Vec<usize> = prefix.iter().copied().take(l).collect();
    let mut next = m;
    while r.len() < l {
        next -= 1;
        if !prefix.contains(&next) {
            r.push(next);
        }
    }
    r
}

/// Total of the known vote blocks: `28q² + 36q + 2q/3 − 1`.
pub fn stv_total_votes(q: usize) -> u64 {
    let q = q as u64;
    28 * q * q + 36 * q + 2 * q / 3 - 1
}

pub fn reduce_stv(inst: &Rxc3Instance, mode: BallotMode) -> Result<ReductionOutput> {
    validate_rxc3(inst)?;
    let l = check_mode(mode)?;
    let q = inst.q;
    check_divisible(q, ReductionKind::Stv.required_divisor(l))?;
    let m = 3 * q + 3;
    let (qi, qu) = (q as i64, q as u64);

    let mut roles = vec![Role::Target, Role::Rival];
    roles.extend((0..=q).map(Role::Dummy));
    for i in 1..=q {
        roles.push(Role::Bridge(i));
        roles.push(Role::BridgeBar(i));
    }

    let mut blocks: Vec<(String, Vec<usize>, u64)> = vec![
        ("P1".into(), vec![C, W], 12 * qu),
        ("P2".into(), vec![W, C], 12 * qu - 1),
        ("P3".into(), vec![d(0), W, C], 10 * qu + 2 * qu / 3),
    ];
    for j in 1..=q {
        blocks.push((format!("P4[d{j}]"), vec![d(j), W, C], 12 * qu - 2));
    }
    for i in 1..=q {
        let iu = i as u64;
        blocks.push((
            format!("P5a[b{i}]"),
            vec![b(q, i), bbar(q, i), W, C],
            6 * qu + 4 * iu - 6,
        ));
        for &x in &inst.sets[i - 1] {
            let j = x + 1;
            blocks.push((format!("P5b[b{i},d{j}]"), vec![b(q, i), d(j), W, C], 2));
        }
        blocks.push((
            format!("P6a[bbar{i}]"),
            vec![bbar(q, i), b(q, i), W, C],
            6 * qu + 4 * iu - 2,
        ));
        blocks.push((format!("P6b[bbar{i}]"), vec![bbar(q, i), d(0), W, C], 2));
    }

    let mut known = Profile::new(mode, m)?;
    let mut claims = vec![
        Claim::exactly("candidates", Stage::Known, Quantity::Candidates, 3 * qi + 3),
        Claim::exactly("absent votes", Stage::Known, Quantity::Absent, qi / 3),
        Claim::exactly(
            "known votes",
            Stage::Known,
            Quantity::Votes,
            stv_total_votes(q) as i64,
        ),
    ];
    for (label, prefix, count) in blocks {
        let r = fit(&prefix, l, m);
        known.add(Ranking::from_indices(r.iter().copied()), count)?;
        claims.push(Claim::exactly(
            label,
            Stage::Known,
            Quantity::RankingCount(r),
            count as i64,
        ));
    }

    let round = q + 1;
    let score = |c: usize| Quantity::RoundScore {
        round,
        candidate: c,
    };
    claims.push(Claim::exactly(
        "round q+1: w",
        Stage::Witness,
        score(W),
        12 * qi - 1,
    ));
    claims.push(Claim::exactly(
        "round q+1: c",
        Stage::Witness,
        score(C),
        12 * qi,
    ));
    for j in 0..=q {
        claims.push(Claim::exactly(
            format!("round q+1: d{j}"),
            Stage::Witness,
            score(d(j)),
            12 * qi,
        ));
    }
    for i in 1..=q {
        let ii = i as i64;
        claims.push(Claim::exactly(
            format!("round q+1: one of b{i}, bbar{i} standing"),
            Stage::Witness,
            Quantity::Standing {
                round,
                candidates: vec![b(q, i), bbar(q, i)],
            },
            1,
        ));
        claims.push(Claim::exactly(
            format!("round q+1: b{i} if standing"),
            Stage::Witness,
            score(b(q, i)),
            12 * qi + 8 * ii - 2,
        ));
        claims.push(Claim::exactly(
            format!("round q+1: bbar{i} if standing"),
            Stage::Witness,
            score(bbar(q, i)),
            12 * qi + 8 * ii - 5,
        ));
    }
    claims.push(Claim::exactly(
        "round q+1 eliminates w",
        Stage::Witness,
        Quantity::EliminatedIn { round },
        W as i64,
    ));

    let instance = WavInstance::new(
        known,
        qu / 3,
        CandidateId(C),
        Rule::Stv,
        TieBreakOrder::lexicographic(m),
    )?;
    Ok(ReductionOutput {
        kind: ReductionKind::Stv,
        source: inst.clone(),
        instance,
        roles,
        claims,
    })
}

/// One ballot `[b̄_i ≻ b_i ≻ c ≻ w]` per chosen set, cut or padded to the ballot length.
pub fn stv_witness_from_cover(red: &ReductionOutput, sol: &Rxc3Solution) -> Result<Profile> {
    check_solution(&red.source, sol)?;
    let q = red.source.q;
    let (m, l) = (red.instance.m, red.ballot_length());
    let mut p = Profile::new(red.instance.mode, m)?;
    for &j in &sol.indices {
        let i = j + 1;
        let r = fit(&[bbar(q, i), b(q, i), C, W], l, m);
        p.add(Ranking::from_indices(r), 1)?;
    }
    Ok(p)
}
