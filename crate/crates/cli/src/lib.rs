//! Library half of the `pascal-rays` binary, so the subcommands can be
//! driven from tests without spawning a process.

pub mod commands;
pub mod config;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use thiserror::Error;

pub use commands::{run, Outcome};
pub use config::{Cli, Command, Flags, Format, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Compute(#[from] pascal_rays::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// Flags over the config file over defaults.
pub fn resolve(cli: Cli) -> Result<RunConfig, CliError> {
    let file = match &cli.flags.config {
        Some(path) => config::parse_config_file(&std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read config {}: {e}", path.display()))
        })?)?,
        None => Flags::default(),
    };
    RunConfig::resolve(cli.command, cli.flags.over(file))
}

/// Parses, runs and writes output; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = resolve(cli).and_then(|cfg| {
        let out = run(&cfg)?;
        match &cfg.output {
            Some(path) => std::fs::write(path, &out.text)?,
            None => std::io::stdout().write_all(out.text.as_bytes())?,
        }
        Ok(out)
    });
    match result {
        Ok(out) if out.ok => 0,
        Ok(_) => 1,
        Err(e) => {
            eprintln!("pascal-rays: {e}");
            e.exit_code()
        }
    }
}
