//! `cfdim` command-line tool: continued-fraction digit statistics and
//! dimension estimation on top of `cfdim-core`.
//!
//! Exit status: 0 on success, 2 for configuration errors (bad flags, bad
//! config file, structural conflicts), 3 for domain errors raised by the
//! computation (empty windows, missing roots, exhausted precision), 1 for
//! I/O failures.

pub mod args;
pub mod exec;
pub mod output;
pub mod registry;

use std::fs;
use std::io::Write;
use std::path::Path;

use clap::Parser;

use args::{Cli, FormatArg, RunConfig};

const EXIT_OK: u8 = 0;
const EXIT_IO: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_DOMAIN: u8 = 3;

/// Parse the command line, run it, and return the process exit status.
pub fn run() -> u8 {
    // Flag parse errors exit with status 2 inside clap.
    let cli = Cli::parse();
    match run_cli(cli) {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.status
        }
    }
}

struct Failure {
    status: u8,
    message: String,
}

fn fail(status: u8, message: impl Into<String>) -> Failure {
    Failure { status, message: message.into() }
}

fn run_cli(cli: Cli) -> Result<(), Failure> {
    let config = resolve_config(&cli)?;
    args::validate(&config).map_err(|msg| fail(EXIT_CONFIG, msg))?;

    if let Some(path) = &cli.emit_config {
        let text = serde_json::to_string_pretty(&config)
            .map_err(|e| fail(EXIT_IO, format!("cannot serialize config: {e}")))?;
        write_file(path, &format!("{text}\n"))?;
    }

    let table = exec::execute(&config).map_err(|e| fail(EXIT_DOMAIN, e.to_string()))?;
    let rendered = match config.format {
        FormatArg::Csv => output::render_csv(&config, &table),
        FormatArg::Json => output::render_json(&config, &table),
    };
    match &config.out {
        Some(path) => write_file(path, &rendered)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| fail(EXIT_IO, format!("cannot write to stdout: {e}")))?;
        }
    }
    Ok(())
}

/// Combine flags (or a replayed config file) into the run configuration.
fn resolve_config(cli: &Cli) -> Result<RunConfig, Failure> {
    match (&cli.config, &cli.command) {
        (Some(_), Some(_)) => Err(fail(
            EXIT_CONFIG,
            "--config replays a stored run; drop the subcommand",
        )),
        (Some(path), None) => {
            if cli.format.is_some() || cli.out.is_some() {
                return Err(fail(
                    EXIT_CONFIG,
                    "--config replays the stored format and output path; \
                     drop --format/--out",
                ));
            }
            let text = fs::read_to_string(path).map_err(|e| {
                fail(EXIT_IO, format!("cannot read config {}: {e}", path.display()))
            })?;
            serde_json::from_str(&text).map_err(|e| {
                fail(EXIT_CONFIG, format!("bad config {}: {e}", path.display()))
            })
        }
        (None, Some(command)) => Ok(RunConfig {
            command: command.clone(),
            format: cli.format.unwrap_or(FormatArg::Csv),
            out: cli.out.clone(),
        }),
        (None, None) => Err(fail(
            EXIT_CONFIG,
            "nothing to do: give a subcommand or --config <file> (try --help)",
        )),
    }
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content)
        .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}
