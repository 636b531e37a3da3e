//! Prime-only sums and the weights of the Chebyshev race mod 4.

use std::f64::consts::E;

use serde::Serialize;

use super::{lambda_sum, Boundary, Restriction, Term};
use crate::arith::MangoldtTable;
use crate::characters::chi4;
use crate::error::{Error, Result};
use crate::summation::CompensatedSum;

/// Exponential weights are cut at `p > EXP_CUTOFF · x`, where `e^{−p/x} < 1e−18`.
pub const EXP_CUTOFF: f64 = 41.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SqrtLogMode {
    /// `Σ_{2<p≤x} (−1)^{(p−1)/2} log p · √(x/p) log(x/p)`.
    Chi4,
    /// `Σ_{p≤xe²} log p · √(x/p) log(x/p)`.
    ShiftedTrivial,
}

pub fn prime_only_sqrtlog(x: f64, table: &MangoldtTable, mode: SqrtLogMode) -> Result<CompensatedSum> {
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("prime-only sums need x >= 2, got {x}")));
    }
    let lx = x.ln();
    let w = |t: Term| {
        if t.is_prime {
            (x / t.n as f64).sqrt() * (lx - t.ln_n)
        } else {
            0.0
        }
    };
    match mode {
        SqrtLogMode::Chi4 => lambda_sum(table, x, Boundary::Full, &Restriction::Character(chi4()), w),
        SqrtLogMode::ShiftedTrivial => lambda_sum(table, x * E * E, Boundary::Full, &Restriction::All, w),
    }
}

/// `f_χ = f_1 + f_2 + f_3`, split by the exponent `k` of `n = p^k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decomposition {
    /// Primes: `Σ_{p≤x} χ(p) log p/√p · log(x/p)`.
    pub f1: f64,
    /// Squares: `Σ_{p≤√x} χ(p)² log p/p · log(x/p²)`.
    pub f2: f64,
    /// Cubes and higher.
    pub f3: f64,
}

impl Decomposition {
    pub fn total(&self) -> f64 {
        self.f1 + self.f2 + self.f3
    }
}

pub fn prime_power_decomposition(x: f64, table: &MangoldtTable, restriction: &Restriction) -> Result<Decomposition> {
    if !(x >= 1.0) {
        return Err(Error::Domain(format!("decomposition needs x >= 1, got {x}")));
    }
    let lx = x.ln();
    let part = |k: u32| {
        lambda_sum(table, x, Boundary::Full, restriction, move |t: Term| {
            let e = exponent(t);
            if (k < 3 && e == k) || (k == 3 && e >= 3) {
                (lx - t.ln_n) / (t.n as f64).sqrt()
            } else {
                0.0
            }
        })
    };
    Ok(Decomposition {
        f1: part(1)?.value,
        f2: part(2)?.value,
        f3: part(3)?.value,
    })
}

fn exponent(t: Term) -> u32 {
    let mut k = 1;
    let mut m = t.p;
    while m < t.n {
        m *= t.p;
        k += 1;
    }
    k
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChebyshevWeight {
    /// `Σ_{p>2} (−1)^{(p−1)/2} e^{−p/x}`.
    Exp,
    /// `Σ_{p>2} (−1)^{(p−1)/2} log p · e^{−p/x}`.
    ExpLogp,
    /// `Σ_{2<p≤x} (−1)^{(p−1)/2} √(x/p)`.
    SqrtRace,
}

pub fn chebyshev_weight_sum(x: f64, table: &MangoldtTable, weight: ChebyshevWeight) -> Result<CompensatedSum> {
    if !(x >= 3.0) {
        return Err(Error::Domain(format!("Chebyshev weights need x >= 3, got {x}")));
    }
    let chi = Restriction::Character(chi4());
    // lambda_sum multiplies by log p; divide it out where the weight has none
    match weight {
        ChebyshevWeight::Exp => lambda_sum(table, EXP_CUTOFF * x, Boundary::Full, &chi, |t| {
            if t.is_prime {
                (-(t.n as f64) / x).exp() / t.log_p
            } else {
                0.0
            }
        }),
        ChebyshevWeight::ExpLogp => lambda_sum(table, EXP_CUTOFF * x, Boundary::Full, &chi, |t| {
            if t.is_prime {
                (-(t.n as f64) / x).exp()
            } else {
                0.0
            }
        }),
        ChebyshevWeight::SqrtRace => lambda_sum(table, x, Boundary::Full, &chi, |t| {
            if t.is_prime {
                (x / t.n as f64).sqrt() / t.log_p
            } else {
                0.0
            }
        }),
    }
}
