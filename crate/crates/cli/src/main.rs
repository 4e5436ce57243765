mod commands;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use conclab_core::Error;

#[derive(Parser, Debug)]
#[command(name = "conclab", version, about = "Exact link-concordance obstruction calculator")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Bits of precision for certified numeric enclosures (at least 64).
    #[arg(long, global = true, env = "CONCLAB_PRECISION", default_value_t = 128,
          value_parser = clap::value_parser!(u32).range(64..=1 << 16))]
    pub precision: u32,
    /// Exit with status 3 when a verdict is INCONCLUSIVE.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Human,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// R_d(f) = |Res(f, t^d - 1)|.
    Rd {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        d: u64,
    },
    /// Primes dividing R_d(f) for some f in D (the complement of P_d(D)).
    Primeset {
        #[arg(long = "D")]
        set: String,
        #[arg(long, default_value_t = 2)]
        d: u64,
    },
    /// det(A - tA^T) of a knot.
    Alexander {
        #[arg(long)]
        knot: String,
    },
    /// Signature of (1 - w)A + (1 - conj w)A^T at w = exp(2 pi i t).
    Signature {
        #[arg(long)]
        knot: String,
        #[arg(long)]
        t: String,
    },
    /// Jump function of a knot with parameter c.
    Jumps {
        #[arg(long)]
        knot: String,
        #[arg(long, default_value_t = 1)]
        c: u64,
    },
    /// Minimal period of a jump function.
    Period {
        #[arg(long)]
        jumps: String,
    },
    /// Sum of jump functions with a common ambient period.
    Sum {
        #[arg(long, required = true, num_args = 1..)]
        jumps: Vec<String>,
    },
    /// Precompose a jump function with theta -> theta / q.
    Scale {
        #[arg(long)]
        jumps: String,
        #[arg(long)]
        q: u64,
    },
    /// Correction terms of the lens space L(p, q).
    Dlens {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        q: i64,
        /// A single label of the recursion instead of the whole table.
        #[arg(long)]
        i: Option<u64>,
        /// Negate for the reversed orientation.
        #[arg(long)]
        reversed: bool,
    },
    /// V-sequence of an L-space knot from its Alexander polynomial.
    Vseq {
        #[arg(long)]
        poly: String,
    },
    /// Correction terms of n-surgery on an L-space knot.
    Dsurgery {
        #[arg(long)]
        n: u64,
        /// Alexander polynomial of the knot.
        #[arg(long, conflicts_with = "v", required_unless_present = "v")]
        poly: Option<String>,
        /// V-sequence as comma-separated integers.
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        i: Option<u64>,
    },
    /// d-bar = d - d(0) of a table.
    Dbar {
        #[arg(long)]
        table: String,
    },
    /// Square-root-order subgroups of the q-primary part, optionally tested
    /// against a d-bar table.
    Metabolizers {
        /// Cyclic orders, comma-separated, or group JSON.
        #[arg(long)]
        group: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        dbar: Option<String>,
    },
    /// Period obstruction for L(m, J).
    ObstructTop(PipelineArgs),
    /// d-bar obstruction for L(m, J).
    ObstructSmooth(PipelineArgs),
    /// Evaluate an array of pipeline documents.
    Batch {
        #[arg(long)]
        input: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct PipelineArgs {
    /// Pipeline document (file, @file or inline JSON); replaces the flags below.
    #[arg(long, conflicts_with_all = ["m", "knot"])]
    pub input: Option<String>,
    #[arg(long, required_unless_present = "input")]
    pub m: Option<u64>,
    #[arg(long = "J", required_unless_present = "input")]
    pub knot: Option<String>,
    #[arg(long = "D")]
    pub set: Option<String>,
    #[arg(long = "J0")]
    pub j0: Option<String>,
    #[arg(long)]
    pub d: Option<u64>,
    /// d-bar table (file or inline JSON), or `external-q3` for the bundled one.
    #[arg(long)]
    pub dbar: Option<String>,
}

/// Outcome of a successful command.
pub struct Report {
    pub value: serde_json::Value,
    pub inconclusive: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command, &cli.global) {
        Ok(report) => {
            let text = match cli.global.format {
                Format::Json => conclab_core::io::canonical_json(&report.value),
                Format::Human => render::human(&report.value),
            };
            if let Err(e) = emit(&cli.global, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if report.inconclusive && cli.global.strict {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}

fn emit(global: &Global, text: &str) -> std::io::Result<()> {
    match &global.output {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}")
        }
    }
}

/// Errors from reading arguments are input errors.
pub fn input_error(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
