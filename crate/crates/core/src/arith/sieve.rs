//! Segmented sieve for the support of the von Mangoldt function.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Largest limit accepted by default (about 1.2 GB of table at the ceiling).
pub const DEFAULT_CEILING: u64 = 1_000_000_000;

/// Default segment length in integers.
pub const DEFAULT_SEGMENT: usize = 1 << 22;

const CACHE_MAGIC: &[u8; 4] = b"MGT1";

#[derive(Debug, Clone, Copy)]
pub struct SieveConfig {
    pub ceiling: u64,
    pub segment: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self {
            ceiling: DEFAULT_CEILING,
            segment: DEFAULT_SEGMENT,
        }
    }
}

/// All prime powers `n = p^k <= limit` with `Λ(n) = log p`, in increasing order.
///
/// Stored column-wise; `prime[i]` is the `p` with `n[i] = p^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MangoldtTable {
    limit: u64,
    n: Vec<u64>,
    prime: Vec<u32>,
    log_p: Vec<f64>,
}

/// Primes up to `limit` by a plain sieve of Eratosthenes.
pub fn small_primes(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// `floor(√n)`.
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Primes up to `limit`, sieved segment by segment.
pub fn segmented_primes(limit: u64, segment: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let base = small_primes(isqrt(limit));
    let segment = segment.max(1024) as u64;
    let mut primes = Vec::with_capacity((limit as f64 / (limit as f64).ln().max(1.0) * 1.2) as usize);
    let mut mark = vec![false; segment as usize];
    let mut lo = 2u64;
    while lo <= limit {
        let hi = (lo + segment - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        mark[..len].fill(false);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut start = (lo.div_ceil(p) * p).max(p * p);
            while start <= hi {
                mark[(start - lo) as usize] = true;
                start += p;
            }
        }
        primes.extend((0..len).filter(|&i| !mark[i]).map(|i| lo + i as u64));
        lo = hi + 1;
    }
    primes
}

impl MangoldtTable {
    /// Sieves the prime powers up to `limit` with the default configuration.
    pub fn build(limit: u64) -> Result<Self> {
        Self::build_with(limit, SieveConfig::default())
    }

    pub fn build_with(limit: u64, config: SieveConfig) -> Result<Self> {
        if limit > config.ceiling {
            return Err(Error::Capacity {
                requested: limit,
                ceiling: config.ceiling,
            });
        }
        if limit == 0 {
            return Err(Error::Domain("sieve limit must be at least 1".into()));
        }
        let primes = segmented_primes(limit, config.segment);
        let mut entries: Vec<(u64, u32)> = Vec::with_capacity(primes.len() + 64);
        for &p in &primes {
            entries.push((p, p as u32));
            if p <= limit / p {
                let mut pk = p * p;
                loop {
                    entries.push((pk, p as u32));
                    match pk.checked_mul(p) {
                        Some(next) if next <= limit => pk = next,
                        _ => break,
                    }
                }
            }
        }
        entries.sort_unstable_by_key(|e| e.0);
        let log_p = entries.iter().map(|&(_, p)| (p as f64).ln()).collect();
        Ok(Self {
            limit,
            n: entries.iter().map(|e| e.0).collect(),
            prime: entries.iter().map(|e| e.1).collect(),
            log_p,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    pub fn ns(&self) -> &[u64] {
        &self.n
    }

    pub fn primes_of(&self) -> &[u32] {
        &self.prime
    }

    pub fn log_ps(&self) -> &[f64] {
        &self.log_p
    }

    #[inline]
    pub fn n(&self, i: usize) -> u64 {
        self.n[i]
    }

    #[inline]
    pub fn log_p(&self, i: usize) -> f64 {
        self.log_p[i]
    }

    #[inline]
    pub fn prime(&self, i: usize) -> u64 {
        self.prime[i] as u64
    }

    /// True when entry `i` is a prime rather than a higher prime power.
    #[inline]
    pub fn is_prime(&self, i: usize) -> bool {
        self.n[i] == self.prime[i] as u64
    }

    /// Number of entries with `n <= bound`.
    pub fn count_upto(&self, bound: u64) -> usize {
        self.n.partition_point(|&n| n <= bound)
    }

    /// `Λ(n)`, zero off the prime powers.
    pub fn mangoldt(&self, n: u64) -> f64 {
        match self.n.binary_search(&n) {
            Ok(i) => self.log_p[i],
            Err(_) => 0.0,
        }
    }

    pub fn is_prime_power(&self, n: u64) -> bool {
        self.n.binary_search(&n).is_ok()
    }

    /// Checks that `x` lies within the table; returns `floor(x)`.
    pub fn check_range(&self, x: f64) -> Result<u64> {
        if !(x <= self.limit as f64) {
            return Err(Error::Range { x, limit: self.limit });
        }
        Ok(if x < 0.0 { 0 } else { x.floor() as u64 })
    }

    /// Writes the binary cache: `"MGT1"`, limit, count, then `(n, log p)` pairs, little endian.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&self.limit.to_le_bytes())?;
        w.write_all(&(self.n.len() as u64).to_le_bytes())?;
        for (n, lp) in self.n.iter().zip(&self.log_p) {
            w.write_all(&n.to_le_bytes())?;
            w.write_all(&lp.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a cache written by [`save`](Self::save). A wrong magic or a limit
    /// different from `expected_limit` is reported as [`Error::Cache`].
    pub fn load(path: &Path, expected_limit: Option<u64>) -> Result<Self> {
        let mut r = BufReader::new(File::open(path)?);
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic)?;
        if &magic != CACHE_MAGIC {
            return Err(Error::Cache(format!("bad magic {magic:?}")));
        }
        let mut word = [0u8; 8];
        r.read_exact(&mut word)?;
        let limit = u64::from_le_bytes(word);
        if let Some(expected) = expected_limit {
            if expected != limit {
                return Err(Error::Cache(format!(
                    "limit mismatch: cache has {limit}, wanted {expected}"
                )));
            }
        }
        r.read_exact(&mut word)?;
        let count = u64::from_le_bytes(word) as usize;
        let mut n = Vec::with_capacity(count);
        let mut log_p = Vec::with_capacity(count);
        let mut prime = Vec::with_capacity(count);
        for _ in 0..count {
            r.read_exact(&mut word)?;
            let ni = u64::from_le_bytes(word);
            r.read_exact(&mut word)?;
            let lp = f64::from_le_bytes(word);
            n.push(ni);
            prime.push(lp.exp().round() as u32);
            log_p.push(lp);
        }
        if n.windows(2).any(|w| w[0] >= w[1]) || n.last().is_some_and(|&m| m > limit) {
            return Err(Error::Cache("entries out of order or beyond limit".into()));
        }
        Ok(Self { limit, n, prime, log_p })
    }

    /// Loads the cache at `path` when it matches `limit`, otherwise sieves and rewrites it.
    pub fn load_or_build(path: &Path, limit: u64) -> Result<Self> {
        match Self::load(path, Some(limit)) {
            Ok(t) => Ok(t),
            Err(Error::Io(_)) | Err(Error::Cache(_)) => {
                let t = Self::build(limit)?;
                if let Some(dir) = path.parent() {
                    std::fs::create_dir_all(dir)?;
                }
                t.save(path)?;
                Ok(t)
            }
            Err(e) => Err(e),
        }
    }
}
