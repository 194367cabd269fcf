use std::process::ExitCode;

use clap::Parser;
use pfg_cli::{exit_with, fasta2pfg, BuildArgs};

/// Build a prefix-free graph from FASTA sequences and write it as GFA
#[derive(Parser)]
#[command(name = "fasta2pfg", version)]
struct Cli {
    #[command(flatten)]
    args: BuildArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    exit_with("fasta2pfg", fasta2pfg(&cli.args))
}
