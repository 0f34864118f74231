//! `hdc`: desk-scale hyperdimensional computing experiments.
//!
//! Every subcommand is deterministic given `--seed` (or `HDC_SEED`), and
//! every CSV it writes starts with a `#` line recording the resolved flags.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hdc::experiments::Baseline;
use hdc::{BasisKind, DEFAULT_DIM};

/// Seed used when neither `--seed` nor `HDC_SEED` is given.
const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(
    name = "hdc",
    version,
    about = "Bipolar hyperdimensional computing experiments"
)]
struct Cli {
    /// Master seed for every random draw.
    #[arg(long, global = true, env = "HDC_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Element type of the hypervectors.
    #[arg(long, global = true, value_enum, default_value_t = Precision::F32)]
    precision: Precision,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Precision {
    F32,
    F64,
}

impl Precision {
    fn as_str(self) -> &'static str {
        match self {
            Precision::F32 => "f32",
            Precision::F64 => "f64",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Pairwise cosine matrix of a random, level or circular basis set.
    SimProfile {
        /// Basis kind: random, level or circular.
        #[arg(long)]
        kind: BasisKind,
        /// Number of basis hypervectors.
        #[arg(long, default_value_t = 10, value_parser = positive)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_DIM, value_parser = positive)]
        dim: usize,
        /// Output CSV; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Divergence of iterative majority bundling from the exact bundle.
    BundleError {
        /// Largest number of bundled operands (at least 2).
        #[arg(long, default_value_t = 100, value_parser = positive)]
        count: usize,
        #[arg(long, default_value_t = DEFAULT_DIM, value_parser = positive)]
        dim: usize,
        /// Repetitions averaged per operand count.
        #[arg(long, default_value_t = 25, value_parser = positive)]
        reps: usize,
        /// Reference vector: `mean` (exact sum) or `quantized` (its sign).
        #[arg(long, default_value = "mean")]
        baseline: Baseline,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fruit records stored as hash tables and queried key by key.
    RecordDemo {
        #[arg(long, default_value_t = DEFAULT_DIM, value_parser = positive)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Character n-gram language identification with a centroid classifier.
    Langid {
        /// Corpus root containing `train/<label>/*.txt` and `test/<label>/*.txt`.
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value_t = 3, value_parser = positive)]
        ngram: usize,
        #[arg(long, default_value_t = DEFAULT_DIM, value_parser = positive)]
        dim: usize,
        /// Metrics JSON; the confusion matrix goes next to it as
        /// `<stem>.confusion.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also save the trained model (binary plus `.json` sidecar).
        #[arg(long)]
        save_model: Option<PathBuf>,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// A failed run: message for stderr plus the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<hdc::Error> for Failure {
    fn from(e: hdc::Error) -> Self {
        use hdc::Error::*;
        let code = match &e {
            InvalidArgument(_) => EXIT_USAGE,
            Io { .. }
            | Decode { .. }
            | Empty(_)
            | UnknownLabel(_)
            | DuplicateLabel(_)
            | Format(_) => EXIT_DATA,
            DimensionMismatch { .. } | ZeroNorm | NotBipolar { .. } | IndexOutOfRange { .. } => {
                EXIT_INTERNAL
            }
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
