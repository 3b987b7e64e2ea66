use std::fs;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use hmcoh_cli::report::render;
use hmcoh_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<u8> {
    let outcome = run(cli)?;
    let text = render(&outcome.report, cli.options.format);
    match &cli.options.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(outcome.status.exit_code() as u8)
}
