use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use recap::error::Error;
use recap::toolkit::{exit_code, resource_hint, run, Cli, EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_OK as u8 });
        }
    };
    match run(&cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("recap: {e}");
            if matches!(e, Error::Resource(_)) {
                eprintln!("recap: {}", resource_hint());
            }
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
