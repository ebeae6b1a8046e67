use std::process::ExitCode;

use clap::Parser;
use zukgap::{run, Cli};

fn main() -> ExitCode {
    run(Cli::parse()).into()
}
