use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const YES: &str = "q 6\nset 1 2 3\nset 1 2 4\nset 1 4 5\nset 2 5 6\nset 3 4 6\nset 3 5 6\n";

const P2: &str = "\
candidates 1 2 3 4
mode up-to-l 3
2: 1 > 3
1: 2 > 1 > 4
1: 3
";

fn topwav(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topwav"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn winner_prints_trace_and_name() {
    let dir = TempDir::new().unwrap();
    let p1 = write(
        dir.path(),
        "p1.txt",
        "candidates 1 2 3 4\nmode top-l 2\n2: 3 > 1\n1: 1 > 4\n1: 2 > 1\n",
    );
    let o = topwav(&["winner", &p1, "--rule", "stv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let outs: Vec<&str> = text
        .lines()
        .filter_map(|l| l.split("-> out ").nth(1))
        .collect();
    assert_eq!(outs, ["4", "2", "3"]);
    assert!(text.ends_with("winner: 1\n"));

    let p2 = write(dir.path(), "p2.txt", P2);
    let o = topwav(&["winner", &p2, "--rule", "score:8,2,1:up"]);
    assert!(stdout(&o).ends_with("winner: 1\n"));
}

#[test]
fn wav_witness_replays() {
    let dir = TempDir::new().unwrap();
    let p2 = write(dir.path(), "p2.txt", P2);
    for method in ["auto", "bruteforce"] {
        let o = topwav(&[
            "wav",
            &p2,
            "--rule",
            "score:8,2,1:up",
            "--absent",
            "2",
            "--target",
            "3",
            "--method",
            method,
        ]);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        let witness = text.strip_prefix("YES\n").unwrap();
        let merged = write(dir.path(), "merged.txt", &format!("{P2}{witness}"));
        let o = topwav(&["winner", &merged, "--rule", "score:8,2,1:up"]);
        assert!(
            stdout(&o).ends_with("winner: 3\n"),
            "{method}: {}",
            stdout(&o)
        );
    }
}

#[test]
fn wav_exit_codes() {
    let dir = TempDir::new().unwrap();
    let p2 = write(dir.path(), "p2.txt", P2);
    let o = topwav(&[
        "wav",
        &p2,
        "--rule",
        "score:8,2,1:up",
        "--absent",
        "0",
        "--target",
        "1",
    ]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "YES\n"));

    let o = topwav(&[
        "wav",
        &p2,
        "--rule",
        "score:8,2,1:up",
        "--absent",
        "0",
        "--target",
        "4",
    ]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "NO\n"));

    let o = topwav(&[
        "wav", &p2, "--rule", "stv", "--absent", "1", "--target", "4", "--method", "flow",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = topwav(&[
        "wav",
        &p2,
        "--rule",
        "score:8,2,1",
        "--absent",
        "1",
        "--target",
        "4",
        "--method",
        "flow",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let o = topwav(&[
        "wav", &p2, "--rule", "maximin", "--absent", "50", "--target", "4", "--budget", "1000",
    ]);
    assert_eq!(o.status.code(), Some(3));

    let bad = write(
        dir.path(),
        "bad.txt",
        "candidates a b\nmode top-l 2\n1: a > c\n",
    );
    assert_eq!(
        topwav(&["winner", &bad, "--rule", "stv"]).status.code(),
        Some(2)
    );
}

#[test]
fn reduce_then_verify() {
    let dir = TempDir::new().unwrap();
    let rxc3 = write(dir.path(), "yes.rxc3", YES);
    let prefix = dir.path().join("stv");
    let prefix = prefix.to_str().unwrap();
    let o = topwav(&[
        "reduce", &rxc3, "--rule", "stv", "--l", "2", "--out", prefix,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let ballots = format!("{prefix}.ballots");
    let sidecar = format!("{prefix}.json");
    let text = fs::read_to_string(&ballots).unwrap();
    assert_eq!(
        text.lines().nth(1).unwrap().split_whitespace().count(),
        1 + 21
    );

    let first = fs::read(&ballots).unwrap();
    topwav(&[
        "reduce", &rxc3, "--rule", "stv", "--l", "2", "--out", prefix,
    ]);
    assert_eq!(fs::read(&ballots).unwrap(), first);

    let o = topwav(&["verify", &ballots, &sidecar]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("0 failed\n"));

    // One fewer [d0 > w] vote.
    let line = text.lines().find(|l| l.ends_with(": d0 > w")).unwrap();
    let n: u64 = line.split(':').next().unwrap().parse().unwrap();
    let mutated = text.replace(line, &format!("{}: d0 > w", n - 1));
    let mutated = write(dir.path(), "mutated.ballots", &mutated);
    let o = topwav(&["verify", &mutated, &sidecar]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL P3"));
}

#[test]
fn reduce_reports_the_divisor() {
    let dir = TempDir::new().unwrap();
    let rxc3 = write(dir.path(), "yes.rxc3", YES);
    let out = dir.path().join("mm");
    let out = out.to_str().unwrap();
    let o = topwav(&[
        "reduce", &rxc3, "--rule", "maximin", "--l", "3", "--out", out,
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("12"));

    let o = topwav(&[
        "reduce",
        &rxc3,
        "--rule",
        "maximin",
        "--l",
        "3",
        "--preprocess",
        "--out",
        out,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = topwav(&[
        "reduce", &rxc3, "--rule", "maximin", "--l", "2", "--out", out,
    ]);
    assert!(stdout(&o).contains("t = 2"));

    let bad = write(dir.path(), "bad.rxc3", "q 6\nset 1 2\n");
    let o = topwav(&["reduce", &bad, "--rule", "stv", "--l", "2", "--out", out]);
    assert_eq!(o.status.code(), Some(2));
}
