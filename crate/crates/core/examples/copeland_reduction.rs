//! The Copeland construction for several values of α.

use num_rational::Rational64;
use topwav::reductions::{
    copeland_witness_from_cover, preprocess_rxc3, reduce_copeland, solve_rxc3_bruteforce,
    verify_reduction, Role, Rxc3Instance,
};
use topwav::rules::copeland_scores;
use topwav::BallotMode;

fn main() -> topwav::Result<()> {
    let base = Rxc3Instance::from_one_based(
        6,
        &[
            [1, 2, 3],
            [1, 2, 4],
            [1, 4, 5],
            [2, 5, 6],
            [3, 4, 6],
            [3, 5, 6],
        ],
    )?;
    // q = 12 leaves room for α = 1/2.
    let inst = preprocess_rxc3(&base, 12)?;
    let cover = solve_rxc3_bruteforce(&inst)?.unwrap();

    for alpha in [
        Rational64::from_integer(0),
        Rational64::new(1, 2),
        Rational64::from_integer(1),
    ] {
        let red = reduce_copeland(&inst, BallotMode::TopExactly(2), alpha)?;
        let show = |p: &topwav::Profile| {
            let s = copeland_scores(p, alpha);
            [
                Role::Target,
                Role::Hub,
                Role::Element(1),
                Role::Set(1),
                Role::Filler(1),
            ]
            .map(|r| format!("{}={}", r.name(), s[red.candidate(r).unwrap().0]))
            .join(" ")
        };
        let merged = red
            .instance
            .known
            .merge(&copeland_witness_from_cover(&red, &cover)?)?;
        println!("alpha = {alpha}");
        println!("  before: {}", show(&red.instance.known));
        println!("  after:  {}", show(&merged));
        println!("  verified: {}", verify_reduction(&red, &inst)?.passed());
    }
    Ok(())
}
