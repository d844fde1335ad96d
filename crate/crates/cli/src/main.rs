//! Command-line surface for the newtonps engine.
//!
//! Exit codes: 0 on success, 1 when an enforced verification produced a
//! non-empty diff, 2 on input errors (bad files, inapplicable claims,
//! malformed flags). JSON reports are byte-identical across runs for
//! identical inputs; human-readable timing goes to stderr only.

mod commands;
mod human;

use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "newtonps",
    about = "Newton diagrams, Newton filtrations, and their Poincaré series in exact arithmetic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub(crate) enum Command {
    /// Print the Newton diagram of a problem file: facets, stellar vertex,
    /// u(x_j), u(f)
    Diagram {
        file: PathBuf,
        /// Emit the JSON report instead of the table
        #[arg(long)]
        json: bool,
    },
    /// One Poincaré coefficient with its per-subset dimension table
    Coeff {
        file: PathBuf,
        /// Target exponent, e.g. --v 4,5,5,5
        #[arg(long)]
        v: String,
        /// A, B, or both
        #[arg(long, default_value = "B")]
        method: String,
        /// Method-A truncation override (defaults to the safe bound)
        #[arg(long)]
        truncation: Option<i64>,
        /// Bypass the method-A size guard
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Coefficients at a list of targets or over a whole box
    Series {
        file: PathBuf,
        /// Inline `a,b;c,d` or `@path` to a JSON array of arrays
        #[arg(long)]
        targets: Option<String>,
        /// Per-axis bounds `hi` or `lo:hi`, comma-separated
        #[arg(long = "box")]
        box_bounds: Option<String>,
        /// A, B, or both (defaults to the problem file, then B)
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        truncation: Option<i64>,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check a closed-form or consistency claim; exits 1 on mismatch
    Verify {
        file: PathBuf,
        /// prop1 | thm1 | thm2 | ps-identity | methods-agree
        #[arg(long)]
        claim: String,
        #[arg(long)]
        targets: Option<String>,
        #[arg(long = "box")]
        box_bounds: Option<String>,
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        truncation: Option<i64>,
        #[arg(long)]
        force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the bundled example corpus and print a scoreboard
    Examples {
        /// Run every bundled problem
        #[arg(long)]
        all: bool,
        /// Read corpus files from a directory instead of the built-in copies
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match commands::run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}
