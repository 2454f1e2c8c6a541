//! Exhaustive search over the absent ballots, with a budget.

use topwav::wav::{count_rankings, multiset_count, wav_bruteforce_with, BruteForceConfig};
use topwav::{
    wav_bruteforce, BallotMode, CandidateId, Profile, Rule, TieBreakOrder, WavAnswer, WavInstance,
};

fn main() -> topwav::Result<()> {
    let mode = BallotMode::TopExactly(2);
    let known = Profile::from_votes(mode, 4, &[(&[2, 0], 2), (&[0, 3], 1), (&[1, 0], 1)])?;
    let tb = TieBreakOrder::lexicographic(4);

    for (target, t) in [(3, 1), (3, 2), (1, 2)] {
        let inst = WavInstance::new(known.clone(), t, CandidateId(target), Rule::Stv, tb.clone())?;
        let space = multiset_count(count_rankings(mode, 4), t);
        match wav_bruteforce(&inst)? {
            WavAnswer::Yes(w) => {
                let ballots: Vec<_> = w.entries().map(|(r, n)| (r.to_string(), n)).collect();
                println!("target {target}, t = {t}: YES via {ballots:?} ({space} completions)");
            }
            WavAnswer::No => println!("target {target}, t = {t}: NO ({space} completions)"),
        }
    }

    let inst = WavInstance::new(known, 40, CandidateId(3), Rule::Maximin, tb)?;
    let cfg = BruteForceConfig {
        budget: 1_000_000,
        ..Default::default()
    };
    match wav_bruteforce_with(&inst, &cfg) {
        Err(e) => println!("t = 40: {e}"),
        Ok(a) => println!("t = 40: {}", if a.is_yes() { "YES" } else { "NO" }),
    }
    Ok(())
}
