use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::{execute, CliError, Command, ReplayArgs};

/// Size and FNV-1a hash of an input file, checked again on replay.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: PathBuf,
    pub bytes: u64,
    pub fnv1a64: String,
}

impl InputDigest {
    pub fn of(path: &Path) -> Result<Self, CliError> {
        let data = fs::read(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in &data {
            h ^= u64::from(*b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
        Ok(InputDigest {
            path: path.to_path_buf(),
            bytes: data.len() as u64,
            fnv1a64: format!("{h:016x}"),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    /// Fully resolved arguments, defaults included.
    pub config: Command,
    pub inputs: Vec<InputDigest>,
    pub outputs: Vec<PathBuf>,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
}

pub(crate) fn now_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0)
}

impl RunManifest {
    pub fn new(cmd: &Command, threads: Option<usize>, inputs: Vec<InputDigest>, started_unix_ms: u128) -> Self {
        RunManifest {
            command: cmd.name().to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: cmd.seed(),
            threads,
            config: cmd.clone(),
            inputs,
            outputs: cmd.outputs(),
            started_unix_ms,
            finished_unix_ms: now_ms(),
        }
    }

    pub fn path_for(output: &Path) -> PathBuf {
        let mut s = output.as_os_str().to_owned();
        s.push(".manifest.json");
        PathBuf::from(s)
    }

    pub fn write_next_to(&self, output: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).map_err(|e| CliError::Numerical(e.to_string()))?;
        crate::io::write_text(&Self::path_for(output), &(text + "\n")).map_err(CliError::from)
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
    }
}

pub(super) fn replay(args: &ReplayArgs, threads: Option<usize>) -> Result<(), CliError> {
    let m = RunManifest::read(&args.manifest)?;
    if m.version != env!("CARGO_PKG_VERSION") {
        eprintln!("warning: manifest written by version {}, replaying with {}", m.version, env!("CARGO_PKG_VERSION"));
    }
    for d in &m.inputs {
        let now = InputDigest::of(&d.path)?;
        if now != *d {
            return Err(CliError::Data(format!("input {} changed since the recorded run", d.path.display())));
        }
    }
    let mut cmd = m.config.clone();
    if matches!(cmd, Command::Replay(_)) {
        return Err(CliError::Data("a manifest cannot record a replay".into()));
    }
    if let Some(dir) = &args.redirect {
        cmd.redirect_outputs(dir);
    }
    execute(&cmd, threads.or(m.threads))
}
