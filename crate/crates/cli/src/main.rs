//! `modpart`: verification sweeps, tables and series dumps from the command line.
//!
//! Exit codes: 0 when everything checked is verified, 1 on a mismatch, 2 on a
//! usage or input error.

mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use modpart_core::enumerate::AgInterpretation;
use modpart_core::verify::TypeFamily;

#[derive(Debug, Parser)]
#[command(name = "modpart", version, about = "Alternating sum types against length types, checked by enumeration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compare both sides cell by cell for 1 <= n <= max-n.
    Verify {
        #[arg(long)]
        modulus: u32,
        #[arg(long)]
        max_n: u32,
        /// all, pure, thm31 or thm32.
        #[arg(long, default_value = "all")]
        types: TypeFamily,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Reuse verified cells from the scan cache.
        #[arg(long)]
        resume: bool,
    },
    /// List the partitions of n on both sides, grouped by type.
    Table {
        #[arg(long)]
        modulus: u32,
        #[arg(long)]
        n: u32,
        /// Only types with more than one nonzero entry.
        #[arg(long)]
        mixed_only: bool,
    },
    /// Dump a truncated generating function.
    Series {
        #[arg(long, default_value_t = 3)]
        modulus: u32,
        #[arg(long)]
        trunc: u32,
        /// p, q, factorized, pure, or lemma:<L34|L35|L36|L37>:<n>:<index>.
        #[arg(long)]
        which: String,
    },
    /// Cross-check the modulus-3 recurrence system.
    Qdiff {
        #[arg(long)]
        max_length: u32,
        #[arg(long)]
        trunc: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a gap-condition count with its P-side companion for 0 <= n <= max-n.
    Rrag {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        max_n: u32,
        #[arg(long, default_value = "standard")]
        ag_interpretation: AgInterpretation,
        /// Print both partition lists for every n.
        #[arg(long)]
        witnesses: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify { modulus, max_n, types, out, jobs, resume } => {
            commands::verify(modulus, max_n, types, out.as_deref(), jobs, resume)
        }
        Command::Table { modulus, n, mixed_only } => commands::table(modulus, n, mixed_only),
        Command::Series { modulus, trunc, which } => commands::series(modulus, trunc, &which),
        Command::Qdiff { max_length, trunc, out } => commands::qdiff(max_length, trunc, out.as_deref()),
        Command::Rrag { d, i, max_n, ag_interpretation, witnesses, out } => {
            commands::rrag(d, i, max_n, ag_interpretation, witnesses, out.as_deref())
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
