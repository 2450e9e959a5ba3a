//! `srhd` command-line entry point.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use srhd_cli::commands::{self, Artifacts};
use srhd_cli::config::RunConfig;
use srhd_cli::{exit_code, EXIT_CONFIG};

#[derive(Parser)]
#[command(name = "srhd", version, about = "Entropy-stable solvers for special relativistic hydrodynamics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct ConfigArgs {
    /// Configuration file of `key = value` lines.
    #[arg(short, long)]
    config: Option<PathBuf>,
    /// `key=value` overrides applied after the file.
    overrides: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run one case with one scheme.
    Run(ConfigArgs),
    /// Accuracy study against the closed-form solution (`ns=10,20,...`).
    Sweep(ConfigArgs),
    /// Run several schemes (`schemes=a,b,...`) on one case.
    Compare(ConfigArgs),
    /// Fine-grid first-order local Lax-Friedrichs reference solution.
    Reference(ConfigArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { 0 });
        }
    };
    let (args, action): (&ConfigArgs, fn(&RunConfig) -> srhd::Result<Artifacts>) = match &cli.command {
        Command::Run(a) => (a, commands::run),
        Command::Sweep(a) => (a, commands::sweep),
        Command::Compare(a) => (a, commands::compare),
        Command::Reference(a) => (a, commands::reference),
    };
    let result = RunConfig::load(args.config.as_deref(), &args.overrides).and_then(|cfg| action(&cfg));
    match result {
        Ok(art) => {
            for line in &art.summary {
                println!("{line}");
            }
            for f in &art.files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
