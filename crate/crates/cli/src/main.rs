use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use wordrepeats::algebra::{concat, direct_power, direct_sum, skew_power, skew_sum};
use wordrepeats::construction::{build, verify, DEFAULT_VERIFY_GUARD};
use wordrepeats::oracle::{
    check_unavoidability_balanced, enumerate_balanced, enumerate_cayley, max_repeats_avoiding, write_words,
    DEFAULT_BALANCED_GUARD, DEFAULT_CAYLEY_GUARD, DEFAULT_SEARCH_GUARD,
};
use wordrepeats::render::render_grid;
use wordrepeats::witness::extract_witness;
use wordrepeats::{contains, Error, Pattern, Word};

const GUARD_VAR: &str = "REPEATS_GUARD";

/// Pattern containment for words with repeated letters.
///
/// Words are written either as digit strings (`13043134`) or as integers
/// separated by spaces or commas (`13 14 15`). Size guards on the
/// expensive subcommands can be overridden with the REPEATS_GUARD
/// environment variable.
#[derive(Parser)]
#[command(name = "wordrepeats", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the standardisation of a word.
    Std { word: Word },
    /// Print the number of repeats (length minus distinct letters).
    Repeats { word: Word },
    /// Test whether a word contains a pattern; exits 1 when it does not.
    Contains {
        word: Word,
        pattern: Pattern,
        /// Also print the lexicographically least occurrence.
        #[arg(long)]
        occurrence: bool,
    },
    /// Concatenation, direct and skew sums and powers.
    Algebra {
        #[command(subcommand)]
        op: AlgebraOp,
    },
    /// Print a word of the extremal construction.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "s", value_parser = ["p", "t", "r", "rprime", "q", "s"])]
        part: String,
    },
    /// Check that the construction avoids every unavoidable pattern.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// Extract an unavoidable pattern from a word with enough repeats.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Print the full extraction trace as JSON.
        #[arg(long)]
        trace: bool,
        /// The word, or `-` to read it from standard input.
        word: String,
    },
    /// Brute-force enumeration and search on tiny instances.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Draw a word as a grid of points.
    Render { word: Word },
}

#[derive(Subcommand)]
enum AlgebraOp {
    Concat { left: Word, right: Word },
    Dsum { left: Word, right: Word },
    Ssum { left: Word, right: Word },
    Dpow { word: Word, copies: usize },
    Spow { word: Word, copies: usize },
}

#[derive(Subcommand)]
enum OracleQuery {
    /// All standardised words of a given length, in lexicographic order.
    Cayley {
        #[arg(long)]
        len: usize,
    },
    /// All arrangements of `1..=values`, each used `mult` times.
    Balanced {
        #[arg(long)]
        values: usize,
        #[arg(long)]
        mult: usize,
    },
    /// Most repeats in a word over at most `max-values` values avoiding the family.
    MaxRepeats {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_values: usize,
    },
    /// Check that every balanced word contains a pattern; exits 1 otherwise.
    BalancedCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

enum Failure {
    Domain(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Parse { .. } | Error::NotAPattern { .. } | Error::InvalidOccurrence(_) | Error::InvalidParameter(_) => {
                Failure::Usage(err.to_string())
            }
            _ => Failure::Domain(err.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(err: io::Error) -> Self {
        Failure::Domain(err.to_string())
    }
}

fn guard(default: u128) -> Result<u128, Failure> {
    match std::env::var(GUARD_VAR) {
        Ok(text) => text
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{GUARD_VAR}={text:?} is not a non-negative integer"))),
        Err(_) => Ok(default),
    }
}

fn read_word(arg: &str) -> Result<Word, Failure> {
    if arg == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text.trim().parse()?)
    } else {
        Ok(arg.parse()?)
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Std { word } => writeln!(out, "{}", word.standardise())?,
        Command::Repeats { word } => writeln!(out, "{}", word.repeats())?,
        Command::Contains { word, pattern, occurrence } => match contains(&word, &pattern) {
            Some(occ) if occurrence => writeln!(out, "true {occ}")?,
            Some(_) => writeln!(out, "true")?,
            None => {
                writeln!(out, "false")?;
                return Err(Failure::Domain(format!("{word} avoids {pattern}")));
            }
        },
        Command::Algebra { op } => {
            let result = match op {
                AlgebraOp::Concat { left, right } => concat(&left, &right),
                AlgebraOp::Dsum { left, right } => direct_sum(&left, &right)?,
                AlgebraOp::Ssum { left, right } => skew_sum(&left, &right)?,
                AlgebraOp::Dpow { word, copies } => direct_power(&word, copies)?,
                AlgebraOp::Spow { word, copies } => skew_power(&word, copies)?,
            };
            writeln!(out, "{result}")?;
        }
        Command::Construct { n, k, part } => {
            let limit = guard(DEFAULT_VERIFY_GUARD)?;
            let length = wordrepeats::construction::construction_length(n, k);
            if let Some(length) = length.filter(|&len| len > limit) {
                return Err(Error::SizeGuard { what: "construction length", size: length, guard: limit }.into());
            }
            let parts = build(n, k)?;
            writeln!(out, "{}", parts.part(&part).expect("part names are validated by clap"))?;
        }
        Command::Verify { n, k, json } => {
            let report = verify(n, k, guard(DEFAULT_VERIFY_GUARD)?)?;
            if json {
                let text = serde_json::to_string_pretty(&report).map_err(|e| Failure::Domain(e.to_string()))?;
                writeln!(out, "{text}")?;
            } else {
                let avoided = if report.all_avoided() {
                    "all".to_string()
                } else {
                    let contained: Vec<String> =
                        report.avoided.iter().filter(|(_, ok)| !ok).map(|(id, _)| id.to_string()).collect();
                    format!("all-but:{}", contained.join(";"))
                };
                writeln!(
                    out,
                    "n={n} k={k} length={} repeats={} multiplicity_ok={} avoided={avoided} elapsed_ms={}",
                    report.length,
                    report.repeats,
                    report.multiplicity_ok,
                    report.elapsed.as_millis()
                )?;
            }
            if !report.passed() {
                return Err(Failure::Domain(format!("construction for n={n}, k={k} failed verification")));
            }
        }
        Command::Witness { n, k, trace, word } => {
            let word = read_word(&word)?;
            let (family, occ, details) = extract_witness(&word, n, k)?;
            if trace {
                let text = serde_json::to_string_pretty(&details).map_err(|e| Failure::Domain(e.to_string()))?;
                writeln!(out, "{text}")?;
            } else {
                writeln!(out, "{family} {occ}")?;
            }
        }
        Command::Oracle { query } => match query {
            OracleQuery::Cayley { len } => {
                write_words(out, enumerate_cayley(len, guard(DEFAULT_CAYLEY_GUARD)?)?)?;
            }
            OracleQuery::Balanced { values, mult } => {
                write_words(out, enumerate_balanced(values, mult, guard(DEFAULT_BALANCED_GUARD)?)?)?;
            }
            OracleQuery::MaxRepeats { n, k, max_values } => {
                let found = max_repeats_avoiding(n, k, max_values, guard(DEFAULT_SEARCH_GUARD)?)?;
                let witness = found.witness.as_ref().map_or("-".to_string(), Word::to_string);
                writeln!(
                    out,
                    "repeats={} witness={witness} candidates={} bound=m({n},{k})>={}",
                    found.repeats,
                    found.candidates,
                    found.repeats + 1
                )?;
            }
            OracleQuery::BalancedCheck { n, k } => {
                let check = check_unavoidability_balanced(n, k, guard(DEFAULT_BALANCED_GUARD)?)?;
                write!(out, "holds={} words_checked={}", check.holds, check.words_checked)?;
                match &check.counterexample {
                    Some(word) => writeln!(out, " counterexample={word}")?,
                    None => writeln!(out)?,
                }
                if !check.holds {
                    return Err(Failure::Domain("found a balanced word avoiding every pattern".into()));
                }
            }
        },
        Command::Render { word } => write!(out, "{}", render_grid(&word))?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
