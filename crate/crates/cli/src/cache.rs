//! Sieve caches named `mangoldt-<limit>.mgt` in the cache directory.

use std::fs;
use std::path::{Path, PathBuf};

use prime_bias_core::MangoldtTable;

use crate::config::RunConfig;
use crate::error::CliError;

const SMALLEST: u64 = 100_000;

pub fn cache_path(dir: &Path, limit: u64) -> PathBuf {
    dir.join(format!("mangoldt-{limit}.mgt"))
}

/// Rounds up to a power of ten so that nearby requests share one cache.
pub fn rounded_limit(needed: u64) -> u64 {
    let mut l = SMALLEST;
    while l < needed {
        l = l.saturating_mul(10);
    }
    l
}

fn cached_limits(dir: &Path) -> Vec<u64> {
    let Ok(entries) = fs::read_dir(dir) else {
        return Vec::new();
    };
    let mut v: Vec<u64> = entries
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let name = e.file_name().into_string().ok()?;
            name.strip_prefix("mangoldt-")?.strip_suffix(".mgt")?.parse().ok()
        })
        .collect();
    v.sort_unstable();
    v
}

/// A table covering `needed`: the smallest usable cache, else a fresh sieve
/// (saved to the cache) when the run permits building.
pub fn table_for(cfg: &RunConfig, needed: u64) -> Result<MangoldtTable, CliError> {
    let needed = needed.max(cfg.sieve_limit.unwrap_or(0));
    for limit in cached_limits(&cfg.cache_dir).into_iter().filter(|&l| l >= needed) {
        // a damaged file is skipped, not fatal
        if let Ok(t) = MangoldtTable::load(&cache_path(&cfg.cache_dir, limit), Some(limit)) {
            return Ok(t);
        }
    }
    if !cfg.build {
        return Err(CliError::MissingCache {
            needed,
            dir: cfg.cache_dir.display().to_string(),
        });
    }
    let limit = cfg.sieve_limit.unwrap_or_else(|| rounded_limit(needed)).max(needed);
    build(cfg, limit)
}

pub fn build(cfg: &RunConfig, limit: u64) -> Result<MangoldtTable, CliError> {
    fs::create_dir_all(&cfg.cache_dir)?;
    Ok(MangoldtTable::load_or_build(&cache_path(&cfg.cache_dir, limit), limit)?)
}
