use std::io;
use std::process;

use clap::Parser;
use stubborn_core::cli::{run, Args, RunConfig};

fn main() {
    let args = Args::parse();
    let config = match RunConfig::try_from(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            process::exit(2);
        }
    };
    let status = run(&config, &mut io::stdout().lock(), &mut io::stderr().lock());
    process::exit(status.code());
}
