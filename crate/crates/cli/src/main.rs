use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lfdc_cli::{cmd_check, cmd_elaborate, color_from_env};
use lfdc_core::lfdc::StructuralConfig;

/// Substructural dependent type checking of signatures and queries.
#[derive(Parser)]
#[command(name = "lfdc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every item of the given files.
    Check {
        #[command(flatten)]
        flags: Flags,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print the denotation and rule trace of one item.
    Elaborate {
        file: PathBuf,
        /// Position of the item in the file, counting from 1 and skipping
        /// imports.
        n: usize,
        #[command(flatten)]
        flags: Flags,
    },
}

/// Structural rules to admit. With none, the discipline is ordered.
#[derive(Args)]
struct Flags {
    #[arg(long)]
    weakening: bool,
    #[arg(long)]
    contraction: bool,
    #[arg(long)]
    exchange: bool,
}

impl Flags {
    fn config(&self) -> StructuralConfig {
        StructuralConfig {
            weakening: self.weakening,
            contraction: self.contraction,
            exchange: self.exchange,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, status) = match &cli.command {
        Command::Check { flags, files } => cmd_check(files, &flags.config(), color_from_env()),
        Command::Elaborate { file, n, flags } => cmd_elaborate(file, *n, &flags.config()),
    };
    print!("{out}");
    ExitCode::from(status.code() as u8)
}
