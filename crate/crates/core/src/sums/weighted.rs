//! `ψ_{1/2}`, log-weighted and Riesz sums, with character and residue variants.

use std::f64::consts::E;

use serde::Serialize;

use super::{lambda_sum, Boundary, Restriction};
use crate::arith::{totient, MangoldtTable};
use crate::characters::character_group;
use crate::error::{Error, Result};
use crate::summation::{compensated, CompensatedSum};

const E2: f64 = E * E;

fn need(cond: bool, what: &str, x: f64) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what}, got x = {x}")))
    }
}

/// `ψ_{1/2}(x) = Σ'_{n≤x} Λ(n)/√n`, optionally restricted.
pub fn psi_half(x: f64, table: &MangoldtTable, restriction: &Restriction) -> Result<CompensatedSum> {
    need(x >= 1.0, "psi_half needs x >= 1", x)?;
    lambda_sum(table, x, Boundary::Primed, restriction, |t| 1.0 / (t.n as f64).sqrt())
}

/// `Σ_{n≤x} Λ(n)/√n · log(x/n)`; the boundary term vanishes so no prime is needed.
pub fn f_log(x: f64, table: &MangoldtTable, restriction: &Restriction) -> Result<CompensatedSum> {
    need(x >= 1.0, "f_log needs x >= 1", x)?;
    let lx = x.ln();
    lambda_sum(table, x, Boundary::Full, restriction, |t| {
        (lx - t.ln_n) / (t.n as f64).sqrt()
    })
}

/// `f_χ(x)` for the real part of `χ`.
pub fn f_chi(x: f64, table: &MangoldtTable, chi: &crate::characters::DirichletCharacter) -> Result<CompensatedSum> {
    f_log(x, table, &Restriction::Character(chi.clone()))
}

/// `Σ_{n≤xe²} Λ(n)/√n · log(x/n)`, negative on the stretch `x < n ≤ xe²`.
pub fn f_log_shifted(
    x: f64,
    table: &MangoldtTable,
    restriction: &Restriction,
    boundary: Boundary,
) -> Result<CompensatedSum> {
    need(x >= 1.0, "f_log_shifted needs x >= 1", x)?;
    let lx = x.ln();
    lambda_sum(table, x * E2, boundary, restriction, |t| {
        (lx - t.ln_n) / (t.n as f64).sqrt()
    })
}

fn riesz_terms(
    x: f64,
    upper: f64,
    table: &MangoldtTable,
    restriction: &Restriction,
    boundary: Boundary,
) -> Result<CompensatedSum> {
    need(x > 1.0, "Riesz sums need x > 1", x)?;
    let lx = x.ln();
    lambda_sum(table, upper, boundary, restriction, |t| {
        (1.0 - t.ln_n / lx) / (t.n as f64).sqrt()
    })
}

/// `Σ_{n≤x} Λ(n)/√n (1 − log n/log x) − 4√x/log x`, with target `−ζ'/ζ(1/2)`.
pub fn riesz_sum(x: f64, table: &MangoldtTable) -> Result<CompensatedSum> {
    let s = riesz_terms(x, x, table, &Restriction::All, Boundary::Full)?;
    Ok(s.affine(1.0, -4.0 * x.sqrt() / x.ln()))
}

/// `Σ_{n≤xe²} Λ(n)/√n (1 − log n/log x)`, with target `−ζ'/ζ(1/2)`.
pub fn riesz_shifted(x: f64, table: &MangoldtTable, boundary: Boundary) -> Result<CompensatedSum> {
    riesz_terms(x, x * E2, table, &Restriction::All, boundary)
}

/// `Σ_{n≤x} Λ(n) Re χ(n)/√n (1 − log n/log x)`, with target `−L'/L(1/2, χ)`.
pub fn riesz_chi(x: f64, table: &MangoldtTable, chi: &crate::characters::DirichletCharacter) -> Result<CompensatedSum> {
    riesz_terms(x, x, table, &Restriction::Character(chi.clone()), Boundary::Full)
}

/// Riesz sum over `n ≡ 1 (mod q)`. Unshifted it subtracts `4√x/(φ(q) log x)`;
/// shifted it runs to `xe²` with no subtraction. Target `−C(q)/φ(q)`.
pub fn riesz_q(x: f64, q: u64, table: &MangoldtTable, shift_e2: bool, boundary: Boundary) -> Result<CompensatedSum> {
    let r = Restriction::Residue { q, a: 1 };
    if shift_e2 {
        riesz_terms(x, x * E2, table, &r, boundary)
    } else {
        let s = riesz_terms(x, x, table, &r, boundary)?;
        Ok(s.affine(1.0, -4.0 * x.sqrt() / (totient(q) as f64 * x.ln())))
    }
}

/// [`riesz_q`] divided by `log x`; target `−(1/2)Σ_χ m_χ`.
pub fn riesz_q_lognorm(
    x: f64,
    q: u64,
    table: &MangoldtTable,
    shift_e2: bool,
    boundary: Boundary,
) -> Result<CompensatedSum> {
    Ok(riesz_q(x, q, table, shift_e2, boundary)?.affine(1.0 / x.ln(), 0.0))
}

/// The two residue-class sums over `n ≡ 1 (mod q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ResidueKind {
    /// `f_q(x) = Σ_{n≤x} Λ(n)/√n log(x/n) − 4√x/φ(q)`.
    Fq,
    /// `F_q(x) = Σ_{n≤x} Λ(n)/√n log(x/(ne²))`.
    CapitalFq,
}

fn log_weight(kind: ResidueKind, x: f64) -> f64 {
    match kind {
        ResidueKind::Fq => x.ln(),
        ResidueKind::CapitalFq => x.ln() - 2.0,
    }
}

/// Direct route over the residue class.
pub fn residue_sum(x: f64, q: u64, table: &MangoldtTable, kind: ResidueKind) -> Result<CompensatedSum> {
    need(x >= 1.0, "residue sums need x >= 1", x)?;
    if q == 0 {
        return Err(Error::Domain("modulus must be positive".into()));
    }
    let w = log_weight(kind, x);
    let s = lambda_sum(table, x, Boundary::Full, &Restriction::Residue { q, a: 1 }, |t| {
        (w - t.ln_n) / (t.n as f64).sqrt()
    })?;
    Ok(match kind {
        ResidueKind::Fq => s.affine(1.0, -4.0 * x.sqrt() / totient(q) as f64),
        ResidueKind::CapitalFq => s,
    })
}

/// Orthogonality route: `(1/φ(q)) Σ_χ Σ_n Λ(n)χ(n)/√n · weight`, each
/// character summed separately.
pub fn residue_sum_by_characters(x: f64, q: u64, table: &MangoldtTable, kind: ResidueKind) -> Result<CompensatedSum> {
    need(x >= 1.0, "residue sums need x >= 1", x)?;
    let group = character_group(q)?;
    let w = log_weight(kind, x);
    let phi = group.len() as f64;
    let mut per_char = Vec::with_capacity(group.len());
    for chi in group.characters() {
        // imaginary parts cancel between χ and χ̄, so real parts suffice
        let s = lambda_sum(table, x, Boundary::Full, &Restriction::Character(chi.clone()), |t| {
            (w - t.ln_n) / (t.n as f64).sqrt()
        })?;
        per_char.push(s);
    }
    let total = compensated(per_char.iter().map(|s| s.value));
    let bound: f64 = per_char.iter().map(|s| s.comp_bound).sum::<f64>() + total.comp_bound;
    let s = CompensatedSum {
        value: total.value,
        n_terms: per_char.iter().map(|s| s.n_terms).sum(),
        comp_bound: bound,
    };
    Ok(match kind {
        ResidueKind::Fq => s.affine(1.0 / phi, -4.0 * x.sqrt() / phi),
        ResidueKind::CapitalFq => s.affine(1.0 / phi, 0.0),
    })
}
