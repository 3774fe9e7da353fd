use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use satcheck::{configure_threads, execute, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let report = execute(&cli);
    let rendered = if cli.text { report.to_text() } else { report.to_json() };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            let _ = std::io::stdout().lock().write_all(rendered.as_bytes());
        }
    }
    if let Some(err) = &report.error {
        eprintln!("error ({}): {}", err.kind, err.message);
    }
    ExitCode::from(report.exit_code() as u8)
}
