//! Winners of two small truncated profiles under every rule family.

use num_rational::Rational64;
use topwav::rules::{copeland_scores, maximin_scores, scoring_scores, stv_winner};
use topwav::{
    winner, BallotMode, CandidateId, Profile, Rounding, Rule, ScoringVector, TieBreakOrder,
};

fn main() -> topwav::Result<()> {
    // Four candidates, top-2 ballots.
    let p = Profile::from_votes(
        BallotMode::TopExactly(2),
        4,
        &[(&[2, 0], 2), (&[0, 3], 1), (&[1, 0], 1)],
    )?;
    let tb = TieBreakOrder::lexicographic(4);

    let (w, trace) = stv_winner(&p, &tb);
    for (k, round) in trace.rounds.iter().enumerate() {
        let scores: Vec<String> = round
            .scores
            .iter()
            .map(|(c, s)| format!("{}:{s}", c.0))
            .collect();
        println!(
            "stv round {}: {}, out {}",
            k + 1,
            scores.join(" "),
            round.eliminated.0
        );
    }
    println!("stv winner: {}", w.0);
    println!("maximin: {:?}", maximin_scores(&p)?);
    let half = Rational64::new(1, 2);
    let copeland: Vec<String> = copeland_scores(&p, half)
        .iter()
        .map(|s| s.to_string())
        .collect();
    println!("copeland^1/2: {}", copeland.join(" "));
    println!(
        "copeland^1/2 winner: {}",
        winner(&p, &Rule::copeland(half)?, &tb)?.0
    );

    // Up to three names per ballot; the two roundings disagree.
    let p = Profile::from_votes(
        BallotMode::UpTo(3),
        4,
        &[(&[0, 2], 2), (&[1, 0, 3], 1), (&[2], 1)],
    )?;
    let v = ScoringVector::new(vec![8, 2, 1])?;
    for rounding in [Rounding::Up, Rounding::Down] {
        let scores = scoring_scores(&p, &v, rounding)?;
        let rule = Rule::Scoring(v.clone(), rounding);
        let w: CandidateId = winner(&p, &rule, &tb)?;
        println!("{rule}: {scores:?} -> {}", w.0);
    }
    Ok(())
}
