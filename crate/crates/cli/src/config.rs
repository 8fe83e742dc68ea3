//! Optional key=value config file and the sieve-cap environment override.
//!
//! Precedence, highest first: command-line flag, config file, environment,
//! built-in default.

use std::path::{Path, PathBuf};

use orderstats::arith::DEFAULT_SIEVE_CAP;

pub const SIEVE_CAP_ENV: &str = "ORDERSTATS_SIEVE_CAP";

#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    pub workers: Option<usize>,
    pub format: Option<String>,
    pub output: Option<PathBuf>,
    pub sieve_cap: Option<u64>,
}

pub fn load(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut cfg = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value, got {raw:?}", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "workers" => {
                cfg.workers = Some(value.parse().map_err(|e| {
                    format!("config line {}: bad workers value {value:?}: {e}", lineno + 1)
                })?)
            }
            "format" => cfg.format = Some(value.to_string()),
            "output" => cfg.output = Some(PathBuf::from(value)),
            "sieve_cap" | "sieve-cap" => {
                cfg.sieve_cap = Some(value.parse().map_err(|e| {
                    format!("config line {}: bad sieve_cap value {value:?}: {e}", lineno + 1)
                })?)
            }
            other => {
                return Err(format!("config line {}: unknown key {other:?}", lineno + 1));
            }
        }
    }
    Ok(cfg)
}

pub fn effective_sieve_cap(flag: Option<u64>, file: Option<u64>) -> Result<u64, String> {
    if let Some(v) = flag.or(file) {
        return Ok(v);
    }
    match std::env::var(SIEVE_CAP_ENV) {
        Ok(raw) => raw
            .trim()
            .parse()
            .map_err(|e| format!("bad {SIEVE_CAP_ENV} value {raw:?}: {e}")),
        Err(_) => Ok(DEFAULT_SIEVE_CAP),
    }
}
