//! The STV construction on a six-element cover instance.

use topwav::reductions::{
    reduce_stv, solve_rxc3_bruteforce, stv_total_votes, stv_witness_from_cover, verify_reduction,
    Rxc3Instance,
};
use topwav::rules::stv_winner;
use topwav::BallotMode;

fn main() -> topwav::Result<()> {
    let sets = [
        [1, 2, 3],
        [1, 2, 4],
        [1, 4, 5],
        [2, 5, 6],
        [3, 4, 6],
        [3, 5, 6],
    ];
    let inst = Rxc3Instance::from_one_based(6, &sets)?;
    let cover = solve_rxc3_bruteforce(&inst)?.expect("instance has a cover");
    println!("cover: {cover}");

    for l in 2..=4 {
        let red = reduce_stv(&inst, BallotMode::TopExactly(l))?;
        let names = red.names();
        assert_eq!(red.instance.known.num_votes(), stv_total_votes(inst.q));
        let witness = stv_witness_from_cover(&red, &cover)?;
        let merged = red.instance.known.merge(&witness)?;
        let (w, trace) = stv_winner(&merged, &red.instance.tb);
        let order: Vec<&str> = trace
            .eliminations()
            .iter()
            .map(|c| names[c.0].as_str())
            .collect();
        println!(
            "l = {l}: {} candidates, winner {}",
            red.instance.m, names[w.0]
        );
        println!("  eliminated: {}", order.join(" "));
        let report = verify_reduction(&red, &inst)?;
        println!(
            "  {} checks, all passed: {}",
            report.checks.len(),
            report.passed()
        );
    }
    Ok(())
}
