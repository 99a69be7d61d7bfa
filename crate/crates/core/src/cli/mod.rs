//! Command-line front end. [`run`] parses arguments, executes one command,
//! writes a manifest next to its first output and returns the exit code:
//! 0 success, 2 usage error, 3 data error, 4 numerical failure.

mod args;
mod commands;
mod manifest;

use std::ffi::OsString;
use std::fmt;

use clap::Parser;

pub use args::*;
pub use manifest::{InputDigest, RunManifest};

use crate::error::Error;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Data(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Input(_) | Error::Degenerate(_) | Error::EmptySelection { .. } => CliError::Data(e.to_string()),
            _ => CliError::Numerical(e.to_string()),
        }
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I) -> i32
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
    match execute(&cli.command, cli.threads) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Run one command on a pool of `threads` workers (all cores when `None`).
pub fn execute(cmd: &Command, threads: Option<usize>) -> Result<(), CliError> {
    if let Command::Replay(r) = cmd {
        return manifest::replay(r, threads);
    }
    if threads == Some(0) {
        return Err(usage("--threads must be at least 1"));
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Numerical(e.to_string()))?;
    let started = manifest::now_ms();
    let inputs = cmd.inputs().iter().map(|p| InputDigest::of(p)).collect::<Result<Vec<_>, _>>()?;
    pool.install(|| commands::dispatch(cmd))?;
    let m = RunManifest::new(cmd, threads, inputs, started);
    if let Some(primary) = cmd.outputs().first() {
        m.write_next_to(primary)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(Error::Input("x".into())).exit_code(), 3);
        assert_eq!(CliError::from(Error::Degenerate("x".into())).exit_code(), 3);
        let nc = Error::NonConvergence {
            value: 1.0,
            abs_error: 1.0,
            evaluations: 3,
        };
        assert_eq!(CliError::from(nc).exit_code(), 4);
        assert_eq!(usage("x").exit_code(), 2);
        assert_eq!(run(["indapprox", "--help"]), 0);
        assert_eq!(run(["indapprox", "sample"]), 2);
    }

    #[test]
    fn manifest_round_trip() {
        let cli = Cli::try_parse_from(["indapprox", "stdmap", "--k", "0.5", "--m", "3", "--t", "4", "--seed", "1", "--out", "o/z.csv"]).unwrap();
        let m = RunManifest::new(&cli.command, Some(2), vec![], 0);
        let back: RunManifest = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back.config, cli.command);
        let mut c = back.config;
        c.redirect_outputs(std::path::Path::new("elsewhere"));
        assert_eq!(c.outputs(), vec![std::path::PathBuf::from("elsewhere/z.csv")]);
        assert_eq!(RunManifest::path_for(std::path::Path::new("a/b.csv")), std::path::PathBuf::from("a/b.csv.manifest.json"));
    }
}
