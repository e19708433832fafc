use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use hypstep::cli::{Cli, Settings};
use hypstep::suites;
use hypstep::CliError;

fn run(cli: &Cli) -> Result<bool, CliError> {
    let settings = Settings::resolve(cli.command, &cli.options)?;
    let started = Instant::now();
    let report = suites::run(&settings)?;
    let elapsed = cli.options.wall_time.then(|| started.elapsed().as_secs_f64());
    let bytes = report.render(&settings, cli.options.format, elapsed)?;
    match &cli.options.out {
        Some(path) => fs::write(path, &bytes)?,
        None => io::stdout().lock().write_all(&bytes)?,
    }
    for failure in &report.failures {
        eprintln!("invariant failed: {failure}");
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("hypstep: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
