use num_rational::Rational64;

use crate::ballots::{
    BallotMode, CandidateId, Profile, Ranking, TieBreakOrder, WeightedMajorityGraph,
};
use crate::error::{Error, Result};
use crate::rules::Rule;
use crate::wav::WavInstance;

use super::{
    check_divisible, check_mode, gadget_profile, target_then_sets, validate_rxc3, Bound, Claim,
    Quantity, ReductionKind, ReductionOutput, Role, Rxc3Instance, Rxc3Solution, Stage,
};

/// Layout: x_1..x_q, c, w_1..w_{q/2+1}, b, S_1..S_q. The tie-break follows it.
struct Layout {
    q: usize,
}

impl Layout {
    fn x(&self, i: usize) -> usize {
        i - 1
    }
    fn c(&self) -> usize {
        self.q
    }
    fn w(&self, k: usize) -> usize {
        self.q + k
    }
    fn b(&self) -> usize {
        self.q + self.q / 2 + 2
    }
    fn s(&self, j: usize) -> usize {
        self.q + self.q / 2 + 2 + j
    }
    fn m(&self) -> usize {
        2 * self.q + self.q / 2 + 3
    }
}

/// Circulant tournament on `1..=n`: the arcs `u → v`, then the pairs
/// `(lo, hi)` at distance `n/2`, which the caller closes through a third node.
fn circulant(n: usize) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let (mut arcs, mut diametric) = (Vec::new(), Vec::new());
    for lo in 1..=n {
        for hi in lo + 1..=n {
            let gap = hi - lo;
            if 2 * gap < n {
                arcs.push((lo, hi));
            } else if 2 * gap > n {
                arcs.push((hi, lo));
            } else {
                diametric.push((lo, hi));
            }
        }
    }
    (arcs, diametric)
}

pub fn reduce_copeland(
    inst: &Rxc3Instance,
    mode: BallotMode,
    alpha: Rational64,
) -> Result<ReductionOutput> {
    validate_rxc3(inst)?;
    let rule = Rule::copeland(alpha)?;
    let l = check_mode(mode)?;
    let q = inst.q;
    let divisor = ReductionKind::Copeland(alpha).required_divisor(l);
    check_divisible(q, divisor)?;
    let full_ties = alpha == Rational64::from_integer(1);
    if !full_ties && alpha >= Rational64::new(q as i64 - 3, q as i64) {
        return Err(Error::ReductionPrecondition(format!(
            "α = {alpha} needs α < (q−3)/q at q = {q}"
        )));
    }
    let t = q / (3 * (l - 1));
    let at = Layout { q };
    let m = at.m();
    let (qi, ti) = (q as i64, t as i64);
    let big = 4 * qi;
    let id = CandidateId;

    let mut roles: Vec<Role> = (1..=q).map(Role::Element).collect();
    roles.push(Role::Target);
    roles.extend((1..=q / 2 + 1).map(Role::Filler));
    roles.push(Role::Hub);
    roles.extend((1..=q).map(Role::Set));

    let mut g = WeightedMajorityGraph::zero(m);
    let mut add = |a: usize, b: usize, w: i64| g.add_edge(id(a), id(b), w);
    let (arcs, diametric) = circulant(q);
    for &(u, v) in &arcs {
        add(at.x(u), at.x(v), big);
        add(at.s(u), at.s(v), big);
    }
    for &(lo, hi) in &diametric {
        add(at.x(lo), at.x(hi), big);
        add(at.x(hi), at.b(), big);
        add(at.b(), at.x(lo), big);
        // both set nodes beat b, unlike the element triangle
        add(at.s(lo), at.s(hi), big);
        add(at.s(hi), at.b(), big);
        add(at.s(lo), at.b(), big);
    }
    for k in 1..=q / 2 + 1 {
        for v in 1..=q {
            add(at.s(v), at.w(k), big);
            add(at.w(k), at.x(v), big);
        }
        add(at.c(), at.w(k), big);
        add(at.b(), at.w(k), big);
    }
    for i in 1..=q {
        for j in 1..=q {
            let w = match (inst.contains(j - 1, i - 1), full_ties) {
                (false, _) => big,
                // leaves x_i ahead by one once S_j's ballots below are counted
                (true, false) => 2,
                (true, true) => 0,
            };
            add(at.x(i), at.s(j), w);
        }
        add(at.x(i), at.c(), big);
    }
    let s_to_c = if full_ties { ti + 2 } else { ti - 2 };
    for j in 1..=q {
        add(at.s(j), at.c(), s_to_c);
    }
    add(at.b(), at.c(), big);

    let mut known = gadget_profile(g, mode, q, divisor)?;
    if !full_ties {
        for (j, set) in inst.sets.iter().enumerate() {
            for &e in set {
                let r = [at.s(j + 1), at.x(e + 1)]
                    .into_iter()
                    .chain((1..l - 1).map(|k| at.w(k)));
                known.add(Ranking::from_indices(r), 1)?;
            }
        }
    }
    known.add(
        Ranking::from_indices(std::iter::once(at.c()).chain((1..l).map(|k| at.w(k)))),
        2,
    )?;

    let half = qi / 2;
    let r = Rational64::from_integer;
    let mut claims = vec![
        Claim::exactly(
            "candidates",
            Stage::Known,
            Quantity::Candidates,
            2 * qi + half + 3,
        ),
        Claim::exactly("absent votes", Stage::Known, Quantity::Absent, ti),
        Claim::exactly(
            "score c",
            Stage::Known,
            Quantity::CopelandScore(at.c()),
            half + 1,
        ),
        Claim::exactly(
            "score b",
            Stage::Known,
            Quantity::CopelandScore(at.b()),
            qi + 2,
        ),
        Claim::exactly(
            "witness: score c",
            Stage::Witness,
            Quantity::CopelandScore(at.c()),
            qi + half + 1,
        ),
        Claim::exactly(
            "witness: score b",
            Stage::Witness,
            Quantity::CopelandScore(at.b()),
            qi + 2,
        ),
    ];
    let (s_known, s_after, x_after) = if full_ties {
        (r(qi + 6), r(qi + 6), r(qi + half))
    } else {
        (r(qi + 4), r(qi + 2) + alpha * 3, r(qi + half) + alpha)
    };
    for v in 1..=q {
        claims.push(Claim::exactly(
            format!("score x{v}"),
            Stage::Known,
            Quantity::CopelandScore(at.x(v)),
            qi + half + 1,
        ));
        claims.push(Claim::rational(
            format!("score S{v}"),
            Stage::Known,
            Quantity::CopelandScore(at.s(v)),
            Bound::AtMost,
            s_known,
        ));
        claims.push(Claim::rational(
            format!("witness: score x{v}"),
            Stage::Witness,
            Quantity::CopelandScore(at.x(v)),
            Bound::Exactly,
            x_after,
        ));
        claims.push(Claim::rational(
            format!("witness: score S{v}"),
            Stage::Witness,
            Quantity::CopelandScore(at.s(v)),
            Bound::AtMost,
            s_after,
        ));
        claims.push(Claim::exactly(
            format!("margin S{v} -> c"),
            Stage::Known,
            Quantity::Margin(at.s(v), at.c()),
            if full_ties { ti } else { ti - 1 },
        ));
    }
    for k in 1..=q / 2 + 1 {
        for stage in [Stage::Known, Stage::Witness] {
            let prefix = if stage == Stage::Witness {
                "witness: "
            } else {
                ""
            };
            claims.push(Claim::at_most(
                format!("{prefix}score w{k}"),
                stage,
                Quantity::CopelandScore(at.w(k)),
                qi + half,
            ));
        }
    }
    for (j, set) in inst.sets.iter().enumerate() {
        for &e in set {
            claims.push(Claim::exactly(
                format!("margin x{} -> S{}", e + 1, j + 1),
                Stage::Known,
                Quantity::Margin(at.x(e + 1), at.s(j + 1)),
                if full_ties { 0 } else { 1 },
            ));
        }
    }

    let instance = WavInstance::new(
        known,
        t as u64,
        id(at.c()),
        rule,
        TieBreakOrder::lexicographic(m),
    )?;
    Ok(ReductionOutput {
        kind: ReductionKind::Copeland(alpha),
        source: inst.clone(),
        instance,
        roles,
        claims,
    })
}

/// `t` ballots `[c ≻ S_j ≻ …]` whose set slots are exactly the cover.
pub fn copeland_witness_from_cover(red: &ReductionOutput, sol: &Rxc3Solution) -> Result<Profile> {
    target_then_sets(red, sol)
}
