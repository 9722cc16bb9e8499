//! `cgl`: hash inputs, export graphs, analyze and verify the walk's limit
//! distribution. Reports are JSON unless `--human` is given.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

mod analyze;
mod primes;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cgl_core::cgl::{bytes_to_bits, hash_bits, Convention};
use cgl_core::{Error as CoreError, FieldContext, IsogenyGraph};

#[derive(Parser, Debug)]
#[command(name = "cgl", version, about = "CGL isogeny-walk hash and its limit distribution")]
struct Cli {
    /// Render reports as text instead of JSON.
    #[arg(long, global = true)]
    human: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hash bytes, read MSB-first, to a j-invariant.
    Hash {
        #[arg(long)]
        prime: u64,
        /// Input as hex; may be empty.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        hex: Option<String>,
        /// Input file, hashed byte for byte.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Export the supersingular 2-isogeny graph.
    Graph {
        #[arg(long)]
        prime: u64,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact stationary analysis of one prime, optionally with sampling.
    Analyze {
        #[arg(long)]
        prime: u64,
        /// Number of random inputs to hash.
        #[arg(long)]
        empirical: Option<usize>,
        /// Length of each random input in bits.
        #[arg(long, default_value_t = 256)]
        bits: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the invariant suite over primes, e.g. `5..200`, `5..=199`, `23`
    /// or a comma-separated mix.
    Verify {
        #[arg(long)]
        primes: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

/// How a command ended, mapped to the exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidPrime(_) | CoreError::Malformed(_) | CoreError::ParseElement(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Verification(other.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

#[derive(Serialize)]
struct HashReport {
    convention: Convention,
    prime: u64,
    modulus: String,
    input_bits: usize,
    j: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Hash { prime, hex, file } => cmd_hash(prime, hex, file, cli.human),
        Command::Graph { prime, format, out } => cmd_graph(prime, format, out.as_deref()),
        Command::Analyze { prime, empirical, bits, seed, out } => {
            analyze::run(prime, empirical, bits, seed, cli.human, out.as_deref())
        }
        Command::Verify { primes, out } => verify::run(&primes, cli.human, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn context(prime: u64) -> Result<FieldContext, Failure> {
    FieldContext::new(prime).map_err(|_| Failure::Usage(format!("{prime} is not a prime greater than 3")))
}

fn read_input(hex: Option<String>, file: Option<PathBuf>) -> Result<Vec<u8>, Failure> {
    match (hex, file) {
        (Some(h), _) => {
            let h = h.trim();
            let h = h.strip_prefix("0x").unwrap_or(h);
            hex::decode(h).map_err(|e| Failure::Usage(format!("bad hex input: {e}")))
        }
        (None, Some(path)) => {
            fs::read(&path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
        }
        (None, None) => Err(Failure::Usage("one of --hex or --file is required".into())),
    }
}

/// Write `text` to `out`, or stdout when no path is given.
fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn cmd_hash(prime: u64, hex: Option<String>, file: Option<PathBuf>, human: bool) -> Outcome {
    let ctx = context(prime)?;
    let bytes = read_input(hex, file)?;
    let bits = bytes_to_bits(&bytes);
    let j = hash_bits(&ctx, bits.iter().copied())?;
    let report = HashReport {
        convention: Convention::default(),
        prime,
        modulus: ctx.modulus_string(),
        input_bits: bits.len(),
        j: j.to_string(),
    };
    if human {
        println!("{} (p = {prime}, {} input bits, {})", report.j, report.input_bits, report.convention.name);
    } else {
        print!("{}", to_json(&report));
    }
    Ok(())
}

fn cmd_graph(prime: u64, format: GraphFormat, out: Option<&Path>) -> Outcome {
    let ctx = context(prime)?;
    let g = IsogenyGraph::build(&ctx)?;
    let text = match format {
        GraphFormat::Dot => g.to_dot(),
        GraphFormat::Json => {
            let mut s = g.to_json()?;
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    };
    emit(&text, out)
}
