//! Classical prime-counting functions and the Johnston integrals.

use serde::Serialize;

use super::li::{integral_of_li, log_integral};
use super::sieve::MangoldtTable;
use crate::error::{Error, Result};
use crate::summation::{compensated, Neumaier};

/// `ψ(x) = Σ_{n≤x} Λ(n)`, unprimed.
pub fn chebyshev_psi(x: f64, table: &MangoldtTable) -> Result<f64> {
    let k = table.count_upto(table.check_range(x)?);
    Ok(compensated(table.log_ps()[..k].iter().copied()).value)
}

/// `ϑ(x) = Σ_{p≤x} log p`.
pub fn chebyshev_theta(x: f64, table: &MangoldtTable) -> Result<f64> {
    let k = table.count_upto(table.check_range(x)?);
    Ok(compensated((0..k).filter(|&i| table.is_prime(i)).map(|i| table.log_p(i))).value)
}

/// `π(x)`, the number of primes `p ≤ x`.
pub fn prime_pi(x: f64, table: &MangoldtTable) -> Result<u64> {
    let k = table.count_upto(table.check_range(x)?);
    Ok((0..k).filter(|&i| table.is_prime(i)).count() as u64)
}

/// `Σ_{p≤x} log p / p`.
pub fn mertens_sum(x: f64, table: &MangoldtTable) -> Result<f64> {
    if x < 2.0 {
        return Err(Error::Domain(format!("mertens_sum needs x >= 2, got {x}")));
    }
    let k = table.count_upto(table.check_range(x)?);
    Ok(compensated(
        (0..k)
            .filter(|&i| table.is_prime(i))
            .map(|i| table.log_p(i) / table.n(i) as f64),
    )
    .value)
}

/// Value of a step-function integral evaluated panel by panel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepIntegralResult {
    pub x: f64,
    pub value: f64,
    /// Number of jumps of the step function in `[2, x]`.
    pub n_jumps: u64,
    pub comp_bound: f64,
}

fn johnston_domain(x: f64, table: &MangoldtTable) -> Result<usize> {
    if !(x > 2.0) {
        return Err(Error::Domain(format!("Johnston integrals need x > 2, got {x}")));
    }
    Ok(table.count_upto(table.check_range(x)?))
}

/// `∫_2^x (ϑ(t) − t) dt`.
///
/// A jump of height `log p` at `t = p` contributes `log p · (x − p)`, so the
/// step part is exact; the smooth part is `(x² − 4)/2`.
pub fn johnston_integral_theta(x: f64, table: &MangoldtTable) -> Result<StepIntegralResult> {
    let k = johnston_domain(x, table)?;
    let mut acc = Neumaier::new();
    let mut jumps = 0;
    for i in (0..k).filter(|&i| table.is_prime(i)) {
        acc.add(table.log_p(i) * (x - table.n(i) as f64));
        jumps += 1;
    }
    acc.add(-(x - 2.0) * (x + 2.0) / 2.0);
    let s = acc.finish();
    Ok(StepIntegralResult {
        x,
        value: s.value,
        n_jumps: jumps,
        comp_bound: s.comp_bound,
    })
}

/// `∫_2^x (π(t) − li(t)) dt`; the `li` part is the module's one quadrature.
pub fn johnston_integral_pi(x: f64, table: &MangoldtTable) -> Result<StepIntegralResult> {
    let k = johnston_domain(x, table)?;
    let mut acc = Neumaier::new();
    let mut jumps = 0;
    for i in (0..k).filter(|&i| table.is_prime(i)) {
        acc.add(x - table.n(i) as f64);
        jumps += 1;
    }
    acc.add(-integral_of_li(2.0, x)?);
    let s = acc.finish();
    Ok(StepIntegralResult {
        x,
        value: s.value,
        n_jumps: jumps,
        comp_bound: s.comp_bound,
    })
}

/// `π(x) − li(x)`, convenient for sweeps.
pub fn pi_minus_li(x: f64, table: &MangoldtTable) -> Result<f64> {
    Ok(prime_pi(x, table)? as f64 - log_integral(x)?)
}
