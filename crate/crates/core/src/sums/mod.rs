//! Weighted sums of `Λ(n)` over prime powers.
//!
//! Every sum routes through [`lambda_sum`], which owns the boundary rule: a
//! primed sum `Σ'_{n≤X}` gives the term at `n = X` weight 1/2 when `X` is
//! itself a prime power.

mod race;
mod screw;
mod spec;
mod theorem7;
mod titchmarsh;
mod weighted;

use serde::Serialize;

use crate::arith::MangoldtTable;
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::summation::{block_sum, block_sum_complex, CompensatedSum, ComplexSum};
use num_complex::Complex64;

pub use race::{
    chebyshev_weight_sum, prime_only_sqrtlog, prime_power_decomposition, ChebyshevWeight, Decomposition, SqrtLogMode,
    EXP_CUTOFF,
};
pub use screw::{screw_g0, screw_ginf, screw_total};
pub use spec::{evaluate, evaluate_series, SumKind, SumSample, SumSeries, SumSpec};
pub use theorem7::{divisor_weight, theorem7_sum, Theorem7Path, Theorem7Variant, BRUTEFORCE_BUDGET};
pub use titchmarsh::{titchmarsh_constant, titchmarsh_sum, TitchmarshResult};
pub use weighted::{
    f_chi, f_log, f_log_shifted, psi_half, residue_sum, residue_sum_by_characters, riesz_chi, riesz_q, riesz_q_lognorm,
    riesz_shifted, riesz_sum, ResidueKind,
};

/// Treatment of the term at `n = X` when the upper limit `X` is a prime power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// Full weight.
    Full,
    /// Half weight, the `Σ'` convention.
    Primed,
}

/// Which `n` contribute, and with what coefficient besides `Λ(n)`.
#[derive(Debug, Clone)]
pub enum Restriction {
    All,
    /// Coefficient `Re χ(n)`; exact for real characters.
    Character(DirichletCharacter),
    /// Indicator of `n ≡ a (mod q)`, requires `gcd(a, q) = 1`.
    Residue {
        q: u64,
        a: u64,
    },
}

impl Restriction {
    /// Coefficients indexed by `n mod q`, or `None` when every `n` has weight 1.
    fn coefficients(&self) -> Result<Option<(u64, Vec<f64>)>> {
        match self {
            Restriction::All => Ok(None),
            Restriction::Character(chi) => {
                let q = chi.modulus();
                Ok(Some((q, (0..q).map(|a| chi.value_re(a)).collect())))
            }
            Restriction::Residue { q, a } => {
                if *q == 0 || gcd(*q, *a) != 1 {
                    return Err(Error::Domain(format!("residue class {a} mod {q} needs gcd(a, q) = 1")));
                }
                let a = a % q;
                Ok(Some((*q, (0..*q).map(|r| if r == a { 1.0 } else { 0.0 }).collect())))
            }
        }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One prime power `n = p^k` seen by a weight function.
#[derive(Debug, Clone, Copy)]
pub struct Term {
    pub n: u64,
    pub p: u64,
    pub ln_n: f64,
    pub log_p: f64,
    pub is_prime: bool,
}

/// `Σ_{n≤upper} Λ(n)·c(n)·weight(n)` with `c` from the restriction.
pub fn lambda_sum<W>(
    table: &MangoldtTable,
    upper: f64,
    boundary: Boundary,
    restriction: &Restriction,
    weight: W,
) -> Result<CompensatedSum>
where
    W: Fn(Term) -> f64 + Sync,
{
    let (k, half_at) = support(table, upper, boundary)?;
    let coeff = restriction.coefficients()?;
    Ok(block_sum(k, |i| {
        let n = table.n(i);
        let c = match &coeff {
            None => 1.0,
            Some((q, v)) => v[(n % q) as usize],
        };
        if c == 0.0 {
            return 0.0;
        }
        let t = term(table, i);
        let v = c * t.log_p * weight(t);
        if Some(i) == half_at {
            0.5 * v
        } else {
            v
        }
    }))
}

/// Entries at or below `upper`, and the index carrying half weight if any.
fn support(table: &MangoldtTable, upper: f64, boundary: Boundary) -> Result<(usize, Option<usize>)> {
    let k = table.count_upto(table.check_range(upper)?);
    let half_at = match boundary {
        Boundary::Primed if k > 0 && table.n(k - 1) as f64 == upper => Some(k - 1),
        _ => None,
    };
    Ok((k, half_at))
}

fn term(table: &MangoldtTable, i: usize) -> Term {
    let n = table.n(i);
    Term {
        n,
        p: table.prime(i),
        ln_n: (n as f64).ln(),
        log_p: table.log_p(i),
        is_prime: table.is_prime(i),
    }
}

/// `Σ_{n≤upper} Λ(n)·χ(n)·weight(n)` with complex `χ` and weight; `None`
/// means every `n` has coefficient 1.
pub fn lambda_sum_complex<W>(
    table: &MangoldtTable,
    upper: f64,
    boundary: Boundary,
    chi: Option<&DirichletCharacter>,
    weight: W,
) -> Result<ComplexSum>
where
    W: Fn(Term) -> Complex64 + Sync,
{
    let (k, half_at) = support(table, upper, boundary)?;
    let values: Option<Vec<Complex64>> = chi.map(|c| (0..c.modulus()).map(|a| c.value(a)).collect());
    Ok(block_sum_complex(k, |i| {
        let t = term(table, i);
        let c = match &values {
            None => Complex64::new(1.0, 0.0),
            Some(v) => v[(t.n % v.len() as u64) as usize],
        };
        if c == Complex64::new(0.0, 0.0) {
            return c;
        }
        let v = c * t.log_p * weight(t);
        if Some(i) == half_at {
            0.5 * v
        } else {
            v
        }
    }))
}

/// A conditional expectation (under RH or GRH) that a computed value
/// contradicts. Findings are observations, not failures of the code.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Finding {
    pub check: String,
    /// Where the expectation failed first (an `x`, a `t` or a modulus).
    pub at: f64,
    pub value: f64,
    pub expectation: String,
    pub hypothesis: &'static str,
}
