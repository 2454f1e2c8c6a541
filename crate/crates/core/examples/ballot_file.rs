//! Reading a ballot file, deciding an instance, and writing the witness back.

use std::io::stdout;

use topwav::cli::{cmd_wav, cmd_winner, Method};
use topwav::format::{parse_rule, BallotFile};
use topwav::wav::DEFAULT_BUDGET;

const TEXT: &str = "\
# a small up-to-3 election
candidates ann bob cat dan
mode up-to-l 3
tiebreak ann bob cat dan
2: ann > cat
1: bob > ann > dan
1: cat
";

fn main() -> topwav::Result<()> {
    let file = BallotFile::parse(TEXT)?;
    assert_eq!(BallotFile::parse(&file.to_text())?, file);

    let up = parse_rule("score:8,2,1:up")?;
    cmd_winner(&file, &up, &mut stdout())?;

    let mut out = Vec::new();
    let code = cmd_wav(&file, &up, 2, "cat", Method::Auto, DEFAULT_BUDGET, &mut out)?;
    let text = String::from_utf8(out).unwrap();
    print!("exit {code}\n{text}");

    // Append the witness to the file and re-tabulate.
    let merged = format!("{TEXT}{}", text.trim_start_matches("YES\n"));
    cmd_winner(&BallotFile::parse(&merged)?, &up, &mut stdout())?;
    Ok(())
}
