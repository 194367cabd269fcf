use std::process::ExitCode;

use clap::Parser;
use pfg_cli::{exit_with, gfa2pfg, BuildArgs};

/// Rebuild the paths of a GFA graph as a prefix-free graph
#[derive(Parser)]
#[command(name = "gfa2pfg", version)]
struct Cli {
    #[command(flatten)]
    args: BuildArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    exit_with("gfa2pfg", gfa2pfg(&cli.args))
}
