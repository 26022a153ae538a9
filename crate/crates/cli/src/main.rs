mod cli;
mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;

use cli::Cli;

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("TURANKIT_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .with_context(|| format!("TURANKIT_THREADS must be a positive integer, got `{raw}`"))?;
    if threads == 0 {
        anyhow::bail!("TURANKIT_THREADS must be a positive integer, got `{raw}`");
    }
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    configure_threads()?;
    let outcome = commands::run(cli.command, &cli.opts)?;
    let mut sink: Box<dyn Write> = match &cli.opts.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    output::write(&outcome.report, cli.opts.format, &mut sink)?;
    sink.flush()?;
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
