//! Realizing a prescribed pairwise margin graph with top-ℓ ballots.

use topwav::mcgarvey::{naive_vote_bound, realize_wmg, unit_edge_profile, WmgTarget};
use topwav::{wmg, CandidateId};

fn main() -> topwav::Result<()> {
    let unit = unit_edge_profile(5, 3, CandidateId(0), CandidateId(1))?;
    println!(
        "unit edge 0 -> 1 with m = 5, l = 3: {} ballots",
        unit.num_votes()
    );
    println!("{:?}", wmg(&unit).to_matrix());

    let target = WmgTarget::from_matrix(&[
        vec![0, 4, 2, 0, -6],
        vec![-4, 0, 2, 2, 0],
        vec![-2, -2, 0, 8, 0],
        vec![0, -2, -8, 0, 2],
        vec![6, 0, 0, -2, 0],
    ])?;
    for l in 2..=5 {
        let p = realize_wmg(&target, l)?;
        assert_eq!(&wmg(&p), target.graph());
        println!(
            "l = {l}: {} ballots, {} distinct, one block per unit would need {}",
            p.num_votes(),
            p.num_distinct(),
            naive_vote_bound(&target, l)
        );
    }
    Ok(())
}
