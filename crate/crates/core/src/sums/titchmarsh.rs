//! The Titchmarsh divisor sum `Σ_{n≤x} Λ(n) σ₀(n−1)` and its two-term asymptotic.

use num_complex::Complex64;
use serde::Serialize;

use super::{lambda_sum, Boundary, Restriction};
use crate::arith::{small_primes, MangoldtTable};
use crate::error::{Error, Result};
use crate::specials::{hurwitz_zeta, EULER_GAMMA};

/// Primes entering the constant `Σ_p log p/(p² − p + 1)` directly.
const PRIME_CONSTANT_LIMIT: u64 = 1_000_000;

/// Bound on `Σ_{p>10⁶} log p/p²`, the omitted part of the prime constant.
const PRIME_CONSTANT_TAIL: f64 = 2e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TitchmarshResult {
    pub x: f64,
    pub sum: f64,
    pub predicted: f64,
    /// Uncertainty of `predicted` from truncating the prime constant.
    pub predicted_uncertainty: f64,
}

/// `(ζ(2)ζ(3)/ζ(6), Σ_{p≤10⁶} log p/(p² − p + 1))`.
pub fn titchmarsh_constant() -> Result<(f64, f64)> {
    let z = |k: f64| -> Result<f64> { Ok(hurwitz_zeta(Complex64::new(k, 0.0), 1.0)?.re) };
    let a = z(2.0)? * z(3.0)? / z(6.0)?;
    let mut s = crate::summation::Neumaier::new();
    for p in small_primes(PRIME_CONSTANT_LIMIT) {
        let p = p as f64;
        s.add(p.ln() / (p * p - p + 1.0));
    }
    Ok((a, s.value()))
}

/// `divisors[m] = σ₀(m)` must cover `m ≤ x − 1`.
pub fn titchmarsh_sum(x: f64, table: &MangoldtTable, divisors: &[u32]) -> Result<TitchmarshResult> {
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("Titchmarsh sum needs x >= 2, got {x}")));
    }
    if (divisors.len() as f64) < x {
        return Err(Error::Range {
            x,
            limit: divisors.len().saturating_sub(1) as u64,
        });
    }
    let sum = lambda_sum(table, x, Boundary::Full, &Restriction::All, |t| {
        divisors[(t.n - 1) as usize] as f64
    })?;
    let (a, s) = titchmarsh_constant()?;
    let predicted = a * x * x.ln() + a * (2.0 * (EULER_GAMMA - s) - 1.0) * x;
    Ok(TitchmarshResult {
        x,
        sum: sum.value,
        predicted,
        predicted_uncertainty: 2.0 * a * x * PRIME_CONSTANT_TAIL,
    })
}
