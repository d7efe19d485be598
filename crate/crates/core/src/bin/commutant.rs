use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use commutant::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let path = &cli.command.common().input;
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {path}: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = run(&cli.command, &text);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
