use crate::ballots::{
    BallotMode, CandidateId, Profile, Ranking, TieBreakOrder, WeightedMajorityGraph,
};
use crate::error::Result;
use crate::rules::Rule;
use crate::wav::WavInstance;

use super::{
    check_divisible, check_mode, gadget_profile, target_then_sets, validate_rxc3, Claim, Quantity,
    ReductionKind, ReductionOutput, Role, Rxc3Instance, Rxc3Solution, Stage,
};

// Layout: c, x_1..x_q, S_1..S_q, w_1..w_{ℓ−1}. The tie-break follows it.
const C: usize = 0;

pub fn reduce_maximin(inst: &Rxc3Instance, mode: BallotMode) -> Result<ReductionOutput> {
    validate_rxc3(inst)?;
    let l = check_mode(mode)?;
    let q = inst.q;
    let divisor = ReductionKind::Maximin.required_divisor(l);
    check_divisible(q, divisor)?;
    let t = q / (3 * (l - 1));
    let m = 2 * q + l;
    let x = |i: usize| i;
    let s = |j: usize| q + j;
    let w = |k: usize| 2 * q + k;
    let (qi, ti) = (q as i64, t as i64);
    let id = CandidateId;

    let mut roles = vec![Role::Target];
    roles.extend((1..=q).map(Role::Element));
    roles.extend((1..=q).map(Role::Set));
    roles.extend((1..l).map(Role::Filler));

    let mut g = WeightedMajorityGraph::zero(m);
    for j in 1..=q {
        for i in 1..=q {
            if inst.contains(j - 1, i - 1) {
                g.add_edge(id(s(j)), id(x(i)), qi);
            } else {
                g.add_edge(id(x(i)), id(s(j)), 2 * qi);
            }
        }
    }
    for v in 1..=q {
        g.add_edge(id(x(v)), id(C), qi + ti + 2);
        g.add_edge(id(s(v)), id(C), qi + ti + 2);
        for k in 1..l {
            g.add_edge(id(x(v)), id(w(k)), 2 * qi);
            g.add_edge(id(s(v)), id(w(k)), 2 * qi);
        }
    }
    for k in 1..l {
        g.add_edge(id(C), id(w(k)), 2 * qi);
    }

    let mut known = gadget_profile(g, mode, q, divisor)?;
    known.add(
        Ranking::from_indices(std::iter::once(C).chain((1..l).map(w))),
        1,
    )?;

    let mut claims = vec![
        Claim::exactly(
            "candidates",
            Stage::Known,
            Quantity::Candidates,
            2 * qi + l as i64,
        ),
        Claim::exactly("absent votes", Stage::Known, Quantity::Absent, ti),
        Claim::exactly(
            "min-score c",
            Stage::Known,
            Quantity::MaximinScore(C),
            -qi - ti - 1,
        ),
    ];
    for k in 1..l {
        claims.push(Claim::exactly(
            format!("min-score w{k}"),
            Stage::Known,
            Quantity::MaximinScore(w(k)),
            -2 * qi - 1,
        ));
    }
    for v in 1..=q {
        claims.push(Claim::exactly(
            format!("min-score x{v}"),
            Stage::Known,
            Quantity::MaximinScore(x(v)),
            -qi,
        ));
        claims.push(Claim::exactly(
            format!("min-score S{v}"),
            Stage::Known,
            Quantity::MaximinScore(s(v)),
            -2 * qi,
        ));
    }
    for (j, set) in inst.sets.iter().enumerate() {
        for &e in set {
            claims.push(Claim::exactly(
                format!("margin S{} -> x{}", j + 1, e + 1),
                Stage::Known,
                Quantity::Margin(s(j + 1), x(e + 1)),
                qi,
            ));
        }
    }
    for v in 1..=q {
        claims.push(Claim::exactly(
            format!("margin x{v} -> c"),
            Stage::Known,
            Quantity::Margin(x(v), C),
            qi + ti + 1,
        ));
        claims.push(Claim::exactly(
            format!("margin S{v} -> c"),
            Stage::Known,
            Quantity::Margin(s(v), C),
            qi + ti + 1,
        ));
    }

    claims.push(Claim::exactly(
        "witness: min-score c",
        Stage::Witness,
        Quantity::MaximinScore(C),
        -qi - 1,
    ));
    for v in 1..=q {
        claims.push(Claim::exactly(
            format!("witness: min-score x{v}"),
            Stage::Witness,
            Quantity::MaximinScore(x(v)),
            -qi - 1,
        ));
        claims.push(Claim::at_most(
            format!("witness: min-score S{v}"),
            Stage::Witness,
            Quantity::MaximinScore(s(v)),
            -2 * qi + 1,
        ));
    }
    for k in 1..l {
        claims.push(Claim::at_most(
            format!("witness: min-score w{k}"),
            Stage::Witness,
            Quantity::MaximinScore(w(k)),
            -2 * qi + 1,
        ));
    }

    let instance = WavInstance::new(
        known,
        t as u64,
        id(C),
        Rule::Maximin,
        TieBreakOrder::lexicographic(m),
    )?;
    Ok(ReductionOutput {
        kind: ReductionKind::Maximin,
        source: inst.clone(),
        instance,
        roles,
        claims,
    })
}

/// `t` ballots `[c ≻ S_j ≻ …]` whose set slots are exactly the cover.
pub fn maximin_witness_from_cover(red: &ReductionOutput, sol: &Rxc3Solution) -> Result<Profile> {
    target_then_sets(red, sol)
}
