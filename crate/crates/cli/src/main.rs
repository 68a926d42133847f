use std::io::Write;

use clap::Parser;
use polarmac_cli::args::Cli;
use polarmac_cli::run_cli;

fn main() {
    let out = run_cli(&Cli::parse());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(out.code);
}
