use std::io::Write;

use clap::Parser;

use dualnet::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    if out.output.starts_with("error:") {
        eprintln!("{}", out.output);
    } else if !out.output.is_empty() {
        // a closed pipe (e.g. `| head`) is not an error worth reporting
        let _ = writeln!(std::io::stdout().lock(), "{}", out.output);
    }
    std::process::exit(out.code);
}
