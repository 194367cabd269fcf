use std::process::ExitCode;

use clap::Parser;
use pfg_cli::{exit_with, pfg2sa, SaArgs};

fn main() -> ExitCode {
    let args = SaArgs::parse();
    exit_with("pfg2sa", pfg2sa(&args))
}
