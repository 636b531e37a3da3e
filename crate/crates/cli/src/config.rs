//! `RunConfig`: a flat `key=value` file overridden by command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use prime_bias_core::{Grid, Tolerances};

use crate::error::CliError;

pub const CACHE_ENV: &str = "PRIME_BIAS_LAB_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Where explicit-formula zeros come from.
#[derive(Debug, Clone, PartialEq)]
pub enum ZeroChoice {
    Bundled,
    File(PathBuf),
    /// Scan the critical line up to this height.
    Compute(f64),
}

impl ZeroChoice {
    fn parse(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        Ok(match s {
            "bundled" => ZeroChoice::Bundled,
            _ => match s.strip_prefix("compute:") {
                Some(t) => ZeroChoice::Compute(
                    t.parse()
                        .map_err(|_| CliError::Usage(format!("zeros: bad height in {s:?}")))?,
                ),
                None => ZeroChoice::File(PathBuf::from(s)),
            },
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Smallest sieve limit to use; the needed limit is derived from the grid.
    pub sieve_limit: Option<u64>,
    pub zeros: ZeroChoice,
    /// Zeros per side in explicit sums; defaults to the tolerance block.
    pub zero_count: Option<usize>,
    pub grid: Option<Grid>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
    /// Keep `x` at prime powers (half-weight boundary) instead of moving it off.
    pub strict: bool,
    /// Permission to sieve when no cache covers the request.
    pub build: bool,
    pub cache_dir: PathBuf,
    pub tolerances: Tolerances,
}

fn default_cache_dir() -> PathBuf {
    match std::env::var_os(CACHE_ENV) {
        Some(d) if !d.is_empty() => PathBuf::from(d),
        _ => dirs::cache_dir()
            .unwrap_or_else(std::env::temp_dir)
            .join("prime-bias-lab"),
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            sieve_limit: None,
            zeros: ZeroChoice::Bundled,
            zero_count: None,
            grid: None,
            format: None,
            output: None,
            threads: None,
            strict: false,
            build: true,
            cache_dir: default_cache_dir(),
            tolerances: Tolerances::default(),
        }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool, CliError> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(CliError::Usage(format!("{key}: expected true or false, got {v:?}"))),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    // integers may be written 1e6
    v.parse::<T>()
        .or_else(|_| match v.parse::<f64>() {
            Ok(f) if f.fract() == 0.0 && f >= 0.0 => format!("{f:.0}").parse::<T>().map_err(|_| ()),
            _ => Err(()),
        })
        .map_err(|_| CliError::Usage(format!("{key}: bad number {v:?}")))
}

impl RunConfig {
    /// Applies one `key=value` setting; `tol.<name>` reaches the tolerance block.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        let v = value.trim();
        match key.trim() {
            "sieve_limit" => self.sieve_limit = Some(parse_num(key, v)?),
            "zeros" => self.zeros = ZeroChoice::parse(v)?,
            "zero_count" => self.zero_count = Some(parse_num(key, v)?),
            "grid" => self.grid = Some(v.parse()?),
            "format" => {
                self.format = Some(match v {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err(CliError::Usage(format!("format: expected csv or json, got {v:?}"))),
                })
            }
            "output" => self.output = Some(PathBuf::from(v)),
            "threads" => self.threads = Some(parse_num(key, v)?),
            "strict" => self.strict = parse_bool(key, v)?,
            "build" => self.build = parse_bool(key, v)?,
            "cache_dir" => self.cache_dir = PathBuf::from(v),
            k => match k.strip_prefix("tol.") {
                Some(name) => self.tolerances.set(name, v)?,
                None => return Err(CliError::Usage(format!("unknown config key {k:?}"))),
            },
        }
        Ok(())
    }

    /// Reads a config file: one `key=value` per line, `#` starts a comment.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
            cfg.set(k, v)
                .map_err(|e| CliError::Usage(format!("{}:{}: {e}", path.display(), i + 1)))?;
        }
        Ok(cfg)
    }

    /// Zeros per side used by explicit sums.
    pub fn zero_count(&self) -> usize {
        self.zero_count.unwrap_or(self.tolerances.residual_zero_count)
    }
}
