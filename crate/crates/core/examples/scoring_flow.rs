//! Polynomial max-flow decisions for scoring rules, checked against brute force.

use topwav::flow::{flow_applicable, wav_scoring};
use topwav::{
    wav_bruteforce, BallotMode, CandidateId, Profile, Rounding, Rule, ScoringVector, TieBreakOrder,
    WavInstance,
};

fn main() -> topwav::Result<()> {
    let tb = TieBreakOrder::lexicographic(5);
    let cases = [
        (BallotMode::TopExactly(3), vec![5, 2, 2], Rounding::TopExact),
        (BallotMode::UpTo(3), vec![5, 2, 2], Rounding::Down),
        (BallotMode::UpTo(3), vec![5, 3, 1], Rounding::Up),
    ];
    for (mode, v, rounding) in cases {
        let known = match mode {
            BallotMode::TopExactly(_) => Profile::from_votes(
                mode,
                5,
                &[(&[0, 1, 2], 3), (&[1, 2, 3], 2), (&[2, 0, 4], 1)],
            )?,
            BallotMode::UpTo(_) => {
                Profile::from_votes(mode, 5, &[(&[0, 1], 3), (&[1], 2), (&[2, 0, 4], 1)])?
            }
        };
        let rule = Rule::Scoring(ScoringVector::new(v)?, rounding);
        for t in 0..=4 {
            let inst =
                WavInstance::new(known.clone(), t, CandidateId(3), rule.clone(), tb.clone())?;
            assert!(flow_applicable(&inst));
            let flow = wav_scoring(&inst)?;
            let brute = wav_bruteforce(&inst)?;
            assert_eq!(flow.is_yes(), brute.is_yes());
            if let Some(w) = flow.witness() {
                assert!(inst.verifies(w)?);
            }
            println!(
                "{mode} {rule} t = {t}: {}",
                if flow.is_yes() { "YES" } else { "NO" }
            );
        }
    }
    Ok(())
}
