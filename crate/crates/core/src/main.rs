use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use qbern::cli::{run, CliConfig, EXIT_OK, EXIT_USAGE};

fn main() -> ExitCode {
    let cfg = match CliConfig::try_parse() {
        Ok(cfg) => cfg,
        Err(e) => e.exit(),
    };
    let (code, out) = run(&cfg);
    let written = if code == EXIT_USAGE {
        std::io::stderr().write_all(out.as_bytes())
    } else if let Some(path) = &cfg.output {
        std::fs::write(path, out.as_bytes())
    } else {
        std::io::stdout().write_all(out.as_bytes())
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    if code == EXIT_OK {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(code as u8)
    }
}
