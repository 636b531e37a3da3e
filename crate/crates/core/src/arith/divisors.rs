//! Divisor-count and totient tables.

use super::sieve::DEFAULT_CEILING;
use crate::error::{Error, Result};

fn check_capacity(limit: u64) -> Result<usize> {
    if limit > DEFAULT_CEILING {
        return Err(Error::Capacity {
            requested: limit,
            ceiling: DEFAULT_CEILING,
        });
    }
    Ok(limit as usize)
}

/// `σ₀(n)` for `0 ≤ n ≤ limit`; index 0 holds 0.
pub fn divisor_count_table(limit: u64) -> Result<Vec<u32>> {
    let n = check_capacity(limit)?;
    let mut t = vec![0u32; n + 1];
    for d in 1..=n {
        for m in (d..=n).step_by(d) {
            t[m] += 1;
        }
    }
    Ok(t)
}

/// Euler's `φ(n)` for `0 ≤ n ≤ limit`; index 0 holds 0.
pub fn totient_table(limit: u64) -> Result<Vec<u64>> {
    let n = check_capacity(limit)?;
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for m in (p..=n).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    Ok(phi)
}

/// `φ(n)` by trial factorisation.
pub fn totient(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}
