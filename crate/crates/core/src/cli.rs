//! Command implementations behind the `topwav` binary.
//!
//! Results go to the supplied writer, diagnostics to stderr. Exit codes:
//! 0 for YES or a printed winner, 1 for NO or a failed verification, 2 for
//! input errors, 3 when the exhaustive search would exceed its budget.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::Rational64;

use crate::ballots::BallotMode;
use crate::error::{Error, Result};
use crate::flow::{flow_applicable, wav_scoring};
use crate::format::{parse_rule, parse_rxc3, reduction_ballot_file, BallotFile, Sidecar};
use crate::reductions::{
    preprocess_rxc3, reduce_copeland, reduce_maximin, reduce_stv, verify_reduction_with,
    ReductionKind, ReductionOutput, Rxc3Instance,
};
use crate::rules::{copeland_scores, maximin_scores, scoring_scores, stv_winner, winner, Rule};
use crate::wav::{wav_bruteforce_with, BruteForceConfig, WavAnswer, WavInstance, DEFAULT_BUDGET};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "topwav",
    version,
    about = "Can the absent ballots still elect a candidate?"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate a ballot file and print the winner.
    Winner {
        file: PathBuf,
        /// stv | maximin | copeland:<α> | score:<v1,…,vk>[:up|:down]
        #[arg(long)]
        rule: String,
    },
    /// Decide whether `--absent` more ballots can make `--target` win.
    Wav {
        file: PathBuf,
        #[arg(long)]
        rule: String,
        #[arg(long)]
        absent: u64,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Most completions the exhaustive search may try.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
    /// Turn an RXC3 file into a WAV instance plus a JSON sidecar.
    Reduce {
        rxc3: PathBuf,
        /// stv | maximin | copeland:<α>
        #[arg(long)]
        rule: String,
        /// Ballot length ℓ.
        #[arg(long = "l")]
        length: usize,
        /// Emit up-to-L ballots instead of top-ℓ.
        #[arg(long)]
        up_to: bool,
        /// Duplicate the instance until q meets the divisibility requirement.
        #[arg(long)]
        preprocess: bool,
        /// Writes <OUT>.ballots and <OUT>.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a generated instance against its sidecar.
    Verify {
        ballots: PathBuf,
        sidecar: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Flow when a polynomial solver applies, exhaustive search otherwise.
    Auto,
    Bruteforce,
    Flow,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn io(e: std::io::Error) -> Error {
    Error::Io {
        path: "<stdout>".into(),
        message: e.to_string(),
    }
}

/// Runs one parsed command, returning its exit code.
pub fn run(cli: &Cli, out: &mut impl Write) -> i32 {
    match dispatch(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Divisibility { .. }) {
                eprintln!("hint: --preprocess duplicates the instance until q fits");
            }
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: &Command, out: &mut impl Write) -> Result<i32> {
    match cmd {
        Command::Winner { file, rule } => {
            let f = BallotFile::parse(&read(file)?)?;
            cmd_winner(&f, &parse_rule(rule)?, out)
        }
        Command::Wav {
            file,
            rule,
            absent,
            target,
            method,
            budget,
        } => {
            let f = BallotFile::parse(&read(file)?)?;
            cmd_wav(
                &f,
                &parse_rule(rule)?,
                *absent,
                target,
                *method,
                *budget,
                out,
            )
        }
        Command::Reduce {
            rxc3,
            rule,
            length,
            up_to,
            preprocess,
            out: prefix,
        } => {
            let inst = parse_rxc3(&read(rxc3)?)?;
            let mode = if *up_to {
                BallotMode::UpTo(*length)
            } else {
                BallotMode::TopExactly(*length)
            };
            let red = cmd_reduce(&inst, rule, mode, *preprocess)?;
            let (ballots, sidecar) = reduction_files(&red)?;
            let ballots_path = prefix.with_extension("ballots");
            let sidecar_path = prefix.with_extension("json");
            write_file(&ballots_path, &ballots)?;
            write_file(&sidecar_path, &sidecar)?;
            writeln!(
                out,
                "{}: {} candidates, {} known votes, t = {}, target {}",
                ballots_path.display(),
                red.instance.m,
                red.instance.known.num_votes(),
                red.instance.absent,
                red.names()[red.instance.target.0]
            )
            .map_err(io)?;
            writeln!(
                out,
                "{}: {} claims",
                sidecar_path.display(),
                red.claims.len()
            )
            .map_err(io)?;
            Ok(EXIT_YES)
        }
        Command::Verify {
            ballots,
            sidecar,
            budget,
        } => {
            let f = BallotFile::parse(&read(ballots)?)?;
            let s = Sidecar::from_json(&read(sidecar)?)?;
            cmd_verify(&f, &s, *budget, out)
        }
    }
}

/// Prints per-candidate scores (or the STV rounds) and the winner.
pub fn cmd_winner(file: &BallotFile, rule: &Rule, out: &mut impl Write) -> Result<i32> {
    let p = &file.profile;
    rule.check(p.mode())?;
    let mut text = String::new();
    match rule {
        Rule::Stv => {
            let (_, trace) = stv_winner(p, &file.tb);
            for (k, round) in trace.rounds.iter().enumerate() {
                let scores: Vec<String> = round
                    .scores
                    .iter()
                    .map(|&(c, s)| format!("{}={s}", file.name(c)))
                    .collect();
                text += &format!(
                    "round {}: {} -> out {}\n",
                    k + 1,
                    scores.join(" "),
                    file.name(round.eliminated)
                );
            }
        }
        Rule::Copeland(alpha) => {
            for (c, s) in copeland_scores(p, *alpha).iter().enumerate() {
                text += &format!("{}: {s}\n", file.names[c]);
            }
        }
        Rule::Maximin => {
            for (c, s) in maximin_scores(p)?.iter().enumerate() {
                text += &format!("{}: {s}\n", file.names[c]);
            }
        }
        Rule::Scoring(v, rounding) => {
            for (c, s) in scoring_scores(p, v, *rounding)?.iter().enumerate() {
                text += &format!("{}: {s}\n", file.names[c]);
            }
        }
    }
    let w = winner(p, rule, &file.tb)?;
    text += &format!("winner: {}\n", file.name(w));
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(EXIT_YES)
}

/// Decides the instance; on YES prints the witness as ballot lines.
pub fn cmd_wav(
    file: &BallotFile,
    rule: &Rule,
    absent: u64,
    target: &str,
    method: Method,
    budget: u128,
    out: &mut impl Write,
) -> Result<i32> {
    let target = file
        .index_of(target)
        .ok_or_else(|| Error::parse(0, format!("unknown target {target:?}")))?;
    let inst = WavInstance::new(
        file.profile.clone(),
        absent,
        target,
        rule.clone(),
        file.tb.clone(),
    )?;
    let use_flow = match method {
        Method::Flow => {
            if !matches!(rule, Rule::Scoring(..)) {
                return Err(Error::RuleMismatch(
                    "the flow method needs a scoring rule".into(),
                ));
            }
            if !flow_applicable(&inst) {
                return Err(Error::FlowPrecondition(format!(
                    "{rule} under {} has no polynomial solver",
                    inst.mode
                )));
            }
            true
        }
        Method::Bruteforce => false,
        Method::Auto => flow_applicable(&inst),
    };
    let answer = if use_flow {
        wav_scoring(&inst)?
    } else {
        let cfg = BruteForceConfig {
            budget,
            ..BruteForceConfig::default()
        };
        wav_bruteforce_with(&inst, &cfg)?
    };
    match answer {
        WavAnswer::Yes(witness) => {
            write!(out, "YES\n{}", file.ballot_lines(&witness)).map_err(io)?;
            Ok(EXIT_YES)
        }
        WavAnswer::No => {
            writeln!(out, "NO").map_err(io)?;
            Ok(EXIT_NO)
        }
    }
}

fn reduction_kind(spec: &str) -> Result<ReductionKind> {
    match parse_rule(spec)? {
        Rule::Stv => Ok(ReductionKind::Stv),
        Rule::Maximin => Ok(ReductionKind::Maximin),
        Rule::Copeland(alpha) => Ok(ReductionKind::Copeland(alpha)),
        Rule::Scoring(..) => Err(Error::RuleMismatch(
            "reductions exist for stv, maximin and copeland only".into(),
        )),
    }
}

/// Builds the reduction for `rule`. With `preprocess` the instance is
/// duplicated until `q` fits the construction; without it, a `q` of the
/// wrong divisibility is an error naming the divisor.
pub fn cmd_reduce(
    inst: &Rxc3Instance,
    rule: &str,
    mode: BallotMode,
    preprocess: bool,
) -> Result<ReductionOutput> {
    let kind = reduction_kind(rule)?;
    let l = mode.limit();
    if l < 2 {
        return Err(Error::ReductionPrecondition(format!(
            "ballot length {l} is below 2"
        )));
    }
    let divisor = kind.required_divisor(l);
    let inst = if preprocess {
        let mut inst = preprocess_rxc3(inst, divisor)?;
        // Copeland with α < 1 also wants α < (q − 3)/q.
        if let ReductionKind::Copeland(alpha) = kind {
            while alpha < Rational64::ONE
                && alpha * inst.q as i64 >= Rational64::from_integer(inst.q as i64 - 3)
            {
                inst = inst.duplicate(2);
            }
        }
        inst
    } else {
        inst.clone()
    };
    match kind {
        ReductionKind::Stv => reduce_stv(&inst, mode),
        ReductionKind::Maximin => reduce_maximin(&inst, mode),
        ReductionKind::Copeland(alpha) => reduce_copeland(&inst, mode, alpha),
    }
}

/// The ballot file text and sidecar JSON of a reduction.
pub fn reduction_files(red: &ReductionOutput) -> Result<(String, String)> {
    let file = reduction_ballot_file(red)?;
    let header = format!(
        "# {} reduction, q = {}, absent votes {}, target {}\n",
        red.kind,
        red.source.q,
        red.instance.absent,
        red.names()[red.instance.target.0]
    );
    Ok((
        header + &file.to_text(),
        Sidecar::from_reduction(red).to_json(),
    ))
}

/// Prints the verification report; exits 1 if any claim fails.
pub fn cmd_verify(
    file: &BallotFile,
    sidecar: &Sidecar,
    budget: u128,
    out: &mut impl Write,
) -> Result<i32> {
    let red = sidecar.attach(file)?;
    let report = verify_reduction_with(&red, &red.source, budget)?;
    writeln!(out, "{report}").map_err(io)?;
    Ok(if report.passed() { EXIT_YES } else { EXIT_NO })
}
