//! The `mcs` command: enumerate maximal closed substrings, print the border
//! and OC arrays, summarize a text, generate test strings and time the
//! algorithms.
//!
//! Exit codes: 0 success, 1 usage error, 2 unreadable or empty input (or an
//! unwritable output), 3 the fast and oracle algorithms disagree.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use mcs_core::borders::{border_array, oc_array, p_array};
use mcs_core::extremal::{extremal_string, random_text};
use mcs_core::mcs::{mcs_fast, suffix_run_total_via_tree};
use mcs_core::oracle::{mcs_oracle, suffix_run_total};
use mcs_core::suffix_tree::build_suffix_tree;
use mcs_core::{McsSpan, Text};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

/// Texts longer than this are never handed to the quadratic oracle by `bench`.
pub const BENCH_ORACLE_LIMIT: usize = 100_000;

#[derive(Debug, Parser)]
#[command(name = "mcs", version, about = "Maximal closed substrings of a byte string")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One "start<TAB>end" line per maximal closed substring, 1-based inclusive.
    Mcs(TextArgs),
    /// The border, prefix-maximum and OC arrays.
    Arrays(TextArgs),
    /// Counts as "key: value" lines.
    Stats(TextArgs),
    /// Write a generated text.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[command(flatten)]
        out: OutputArgs,
        /// End the text with a newline.
        #[arg(long)]
        newline: bool,
    },
    /// Time the algorithms on seeded random texts; TSV output.
    Bench(BenchArgs),
    /// Indented dump of the suffix tree, one node per line.
    Tree(TextArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Fast,
    Oracle,
    Both,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TextArgs {
    /// Input file; standard input when absent.
    #[arg(short, long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Algo::Fast)]
    pub algo: Algo,
    /// Keep a trailing newline as part of the text.
    #[arg(long)]
    pub keep_newline: bool,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Prefix of the binary string whose OC array has 1s at triangular positions.
    Extremal {
        #[arg(long)]
        length: usize,
    },
    /// Uniform random text over the given characters.
    Random {
        #[arg(long)]
        length: usize,
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Text lengths, comma separated. Defaults to 2^10 through 2^16.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Algo::Both)]
    pub algo: Algo,
    #[arg(long, default_value = "ab")]
    pub alphabet: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: OutputArgs,
}

/// Failure of a subcommand, mapped to an exit code by [`run`].
#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Mismatch(_) => EXIT_MISMATCH,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Mismatch(m) => m,
        }
    }
}

/// Parses `args` (program name first) and runs the command. Data goes to
/// `stdout` unless `--output` names a file; diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let (result, out) = match &cli.command {
        Command::Mcs(a) => (read_text(a, stdin).and_then(|t| cmd_mcs(&t, a.algo)), &a.out),
        Command::Arrays(a) => (read_text(a, stdin).map(|t| cmd_arrays(&t)), &a.out),
        Command::Stats(a) => (read_text(a, stdin).and_then(|t| cmd_stats(&t, a.algo)), &a.out),
        Command::Tree(a) => (read_text(a, stdin).and_then(|t| cmd_tree(&t)), &a.out),
        Command::Gen { kind, out, newline } => (cmd_gen(kind, *newline), out),
        Command::Bench(a) => (cmd_bench(a, stderr), &a.out),
    };
    match result.and_then(|data| emit(&data, out, stdout)) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "mcs: {}", f.message());
            f.code()
        }
    }
}

fn emit(data: &[u8], out: &OutputArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &out.output {
        Some(path) => fs::write(path, data).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => stdout
            .write_all(data)
            .and_then(|()| stdout.flush())
            .map_err(|e| Failure::Input(format!("stdout: {e}"))),
    }
}

fn read_text(args: &TextArgs, stdin: &mut dyn Read) -> Result<Text, Failure> {
    let mut bytes = match &args.input {
        Some(path) => fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?,
        None => {
            let mut buf = Vec::new();
            stdin
                .read_to_end(&mut buf)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
            buf
        }
    };
    if !args.keep_newline && bytes.last() == Some(&b'\n') {
        bytes.pop();
    }
    if bytes.is_empty() {
        return Err(Failure::Input("input text is empty".into()));
    }
    Ok(Text::new(bytes))
}

fn core_failure(e: mcs_core::Error) -> Failure {
    Failure::Input(e.to_string())
}

fn spans(t: &Text, algo: Algo) -> Result<Vec<McsSpan>, Failure> {
    match algo {
        Algo::Fast => mcs_fast(t).map_err(core_failure),
        Algo::Oracle => mcs_oracle(t).map_err(core_failure),
        Algo::Both => agree(
            mcs_fast(t).map_err(core_failure)?,
            mcs_oracle(t).map_err(core_failure)?,
        ),
    }
}

/// `fast` when both lists are equal, otherwise a mismatch naming the counts
/// and the first differing span.
fn agree(fast: Vec<McsSpan>, oracle: Vec<McsSpan>) -> Result<Vec<McsSpan>, Failure> {
    if fast == oracle {
        return Ok(fast);
    }
    let first = fast
        .iter()
        .zip(&oracle)
        .find(|(f, o)| f != o)
        .map(|(f, o)| format!("fast ({}, {}) vs oracle ({}, {})", f.start, f.end, o.start, o.end))
        .unwrap_or_else(|| "one list is a prefix of the other".into());
    Err(Failure::Mismatch(format!(
        "fast reports {} spans, oracle {}; first difference: {first}",
        fast.len(),
        oracle.len()
    )))
}

fn run_total(t: &Text, algo: Algo) -> Result<usize, Failure> {
    match algo {
        Algo::Fast => suffix_run_total_via_tree(t).map_err(core_failure),
        Algo::Oracle => suffix_run_total(t).map_err(core_failure),
        Algo::Both => {
            let tree = suffix_run_total_via_tree(t).map_err(core_failure)?;
            let direct = suffix_run_total(t).map_err(core_failure)?;
            if tree != direct {
                return Err(Failure::Mismatch(format!(
                    "suffix run total: suffix tree {tree}, direct {direct}"
                )));
            }
            Ok(tree)
        }
    }
}

fn cmd_mcs(t: &Text, algo: Algo) -> Result<Vec<u8>, Failure> {
    let mut out = String::new();
    for s in spans(t, algo)? {
        let _ = writeln!(out, "{s}");
    }
    Ok(out.into_bytes())
}

fn join(values: impl IntoIterator<Item = usize>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_arrays(t: &Text) -> Vec<u8> {
    let b = border_array(t);
    let p = p_array(&b);
    let oc = oc_array(t).expect("text is nonempty");
    format!(
        "B: {}\nP: {}\nOC: {}\n",
        join(b.as_slice().iter().copied()),
        join(p.as_slice().iter().copied()),
        join(oc.to_digits().into_iter().map(usize::from)),
    )
    .into_bytes()
}

fn cmd_stats(t: &Text, algo: Algo) -> Result<Vec<u8>, Failure> {
    let spans = spans(t, algo)?;
    let singletons = spans.iter().filter(|s| s.start == s.end).count();
    let one_runs = oc_array(t).map_err(core_failure)?.one_runs();
    let total = run_total(t, algo)?;
    Ok(format!(
        "n: {}\nmcs_count: {}\nsingleton_count: {singletons}\noc_one_runs: {one_runs}\nsuffix_run_total: {total}\n",
        t.len(),
        spans.len(),
    )
    .into_bytes())
}

fn cmd_tree(t: &Text) -> Result<Vec<u8>, Failure> {
    Ok(build_suffix_tree(t).map_err(core_failure)?.dump().into_bytes())
}

fn cmd_gen(kind: &GenKind, newline: bool) -> Result<Vec<u8>, Failure> {
    let text = match kind {
        GenKind::Extremal { length } => extremal_string(*length),
        GenKind::Random {
            length,
            alphabet,
            seed,
        } => {
            if alphabet.is_empty() {
                return Err(Failure::Usage("--alphabet must not be empty".into()));
            }
            random_text(*length, alphabet.as_bytes(), *seed).map_err(core_failure)?
        }
    };
    let mut out = text.as_bytes().to_vec();
    if newline {
        out.push(b'\n');
    }
    Ok(out)
}

fn cmd_bench(args: &BenchArgs, stderr: &mut dyn Write) -> Result<Vec<u8>, Failure> {
    if args.alphabet.is_empty() {
        return Err(Failure::Usage("--alphabet must not be empty".into()));
    }
    let sizes: Vec<usize> = if args.sizes.is_empty() {
        (10..=16).map(|k| 1usize << k).collect()
    } else {
        args.sizes.clone()
    };
    if sizes.contains(&0) {
        return Err(Failure::Usage("bench sizes must be positive".into()));
    }
    let mut out = String::from("n\talgo\twall_millis\tmcs_count\n");
    for n in sizes {
        let t = random_text(n, args.alphabet.as_bytes(), args.seed ^ n as u64).map_err(core_failure)?;
        let mut counts = Vec::new();
        for (name, algo) in [("fast", Algo::Fast), ("oracle", Algo::Oracle)] {
            if args.algo != Algo::Both && args.algo != algo {
                continue;
            }
            if algo == Algo::Oracle && n > BENCH_ORACLE_LIMIT {
                let _ = writeln!(stderr, "mcs: skipping oracle at n = {n}");
                continue;
            }
            let started = Instant::now();
            let count = spans(&t, algo)?.len();
            let millis = started.elapsed().as_secs_f64() * 1e3;
            let _ = writeln!(out, "{n}\t{name}\t{millis:.3}\t{count}");
            counts.push(count);
        }
        if counts.windows(2).any(|w| w[0] != w[1]) {
            return Err(Failure::Mismatch(format!("n = {n}: counts differ {counts:?}")));
        }
    }
    Ok(out.into_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (u8, String, String) {
        let mut stdout = Vec::new();
        let mut stderr = Vec::new();
        let argv = std::iter::once("mcs").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut stdout, &mut stderr);
        (
            code,
            String::from_utf8(stdout).unwrap(),
            String::from_utf8(stderr).unwrap(),
        )
    }

    #[test]
    fn mcs_lists_spans() {
        let (code, out, _) = call(&["mcs", "--algo", "oracle"], "abaabab\n");
        assert_eq!(code, EXIT_OK);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[0], "1\t1");
        assert_eq!(lines[8], "7\t7");
    }

    #[test]
    fn newline_policy() {
        let (_, stripped, _) = call(&["stats"], "aa\n");
        assert!(stripped.starts_with("n: 2\n"));
        let (_, kept, _) = call(&["stats", "--keep-newline"], "aa\n");
        assert!(kept.starts_with("n: 3\n"));
        let (_, once, _) = call(&["stats"], "aa\n\n");
        assert!(once.starts_with("n: 3\n"));
    }

    #[test]
    fn empty_input_and_usage() {
        assert_eq!(call(&["mcs"], "").0, EXIT_INPUT);
        assert_eq!(call(&["mcs"], "\n").0, EXIT_INPUT);
        assert_eq!(call(&["mcs", "--algo", "slow"], "ab").0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"], "ab").0, EXIT_USAGE);
        assert_eq!(call(&[], "ab").0, EXIT_USAGE);
        assert_eq!(call(&["--help"], "").0, EXIT_OK);
    }

    #[test]
    fn arrays_layout() {
        let (_, out, _) = call(&["arrays"], "aabaaaabaaba");
        assert_eq!(
            out,
            "B: 0 1 0 1 2 2 2 3 4 5 3 4\nP: 0 1 1 1 2 2 2 3 4 5 5 5\nOC: 1 1 0 0 1 0 0 1 1 1 0 0\n"
        );
    }

    #[test]
    fn disagreement_fails_closed() {
        let a = vec![McsSpan::new(1, 1), McsSpan::new(1, 3)];
        let b = vec![McsSpan::new(1, 1), McsSpan::new(2, 3)];
        let err = agree(a.clone(), b).unwrap_err();
        assert_eq!(err.code(), EXIT_MISMATCH);
        assert!(err.message().contains("fast (1, 3) vs oracle (2, 3)"));
        assert_eq!(
            agree(a.clone(), a[..1].to_vec()).unwrap_err().code(),
            EXIT_MISMATCH
        );
        assert_eq!(agree(a.clone(), a.clone()).unwrap(), a);
    }

    #[test]
    fn stats_on_both() {
        let (code, out, _) = call(&["stats", "--algo", "both"], "aaaa");
        assert_eq!(code, EXIT_OK);
        assert_eq!(
            out,
            "n: 4\nmcs_count: 1\nsingleton_count: 0\noc_one_runs: 1\nsuffix_run_total: 4\n"
        );
    }
}
