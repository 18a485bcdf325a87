use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gorenstein_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            eprint!("{}", out.stderr);
            print!("{}", out.stdout);
            let _ = std::io::stdout().flush();
            ExitCode::from(out.code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
