use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use genome_cli::commands;

/// Genetic bases, genomes and genome maps of finite p-groups (odd p).
#[derive(Parser)]
#[command(name = "genome", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a genetic basis with quotient orders and linkage class sizes.
    Basis {
        /// Group, e.g. "C9", "C3 x C3", "ES+(3)", "perm[(1 2 3); (1 4 7)(2 5 8)(3 6 9)]".
        spec: String,
        /// The prime; inferred from the group order when omitted.
        #[arg(short)]
        p: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Print the genome as a product of cyclic groups.
    Genome {
        spec: String,
        #[arg(short)]
        p: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Print the genome map of a biset, e.g. "def(C9,[3]) * inf(C9,[3])".
    Map {
        biset: String,
        #[arg(short)]
        p: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Run seeded self-checks.
    Verify {
        /// One of transfer, functoriality, infdef, rationality, basis-independence, faithful, all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(short, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 81)]
        max_order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Basis { spec, p, json } => commands::basis(&spec, p, json).map(|s| (s, true)),
        Command::Genome { spec, p, json } => commands::genome_cmd(&spec, p, json).map(|s| (s, true)),
        Command::Map { biset, p, json } => commands::map(&biset, p, json).map(|s| (s, true)),
        Command::Verify { suite, p, max_order, seed, json } => commands::verify(&suite, p, max_order, seed, json),
    };
    match result {
        Ok((out, ok)) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal =
                matches!(e.downcast_ref::<genome_core::Error>(), Some(genome_core::Error::InvariantViolation(_)));
            ExitCode::from(if internal { 1 } else { 2 })
        }
    }
}
