//! The Maximin construction on a YES and a NO cover instance.

use topwav::reductions::{reduce_maximin, verify_reduction, Role, Rxc3Instance, Status};
use topwav::rules::maximin_scores;
use topwav::BallotMode;

fn main() -> topwav::Result<()> {
    let yes = Rxc3Instance::from_one_based(
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
    let no = Rxc3Instance::from_one_based(
        6,
        &[
            [1, 2, 3],
            [1, 2, 4],
            [1, 5, 6],
            [2, 5, 6],
            [3, 4, 5],
            [3, 4, 6],
        ],
    )?;

    let red = reduce_maximin(&yes, BallotMode::TopExactly(2))?;
    let scores = maximin_scores(&red.instance.known)?;
    for role in [
        Role::Target,
        Role::Element(1),
        Role::Set(1),
        Role::Filler(1),
    ] {
        let c = red.candidate(role).unwrap();
        println!("{}: {}", role.name(), scores[c.0]);
    }
    let report = verify_reduction(&red, &yes)?;
    println!(
        "yes instance: {} checks, passed: {}",
        report.checks.len(),
        report.passed()
    );

    let red = reduce_maximin(&no, BallotMode::TopExactly(2))?;
    let report = verify_reduction(&red, &no)?;
    let search = report.get("no cover, no winning completion").unwrap();
    assert_eq!(search.status, Status::Pass);
    println!("no instance: {}", search.detail);
    Ok(())
}
