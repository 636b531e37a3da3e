//! Averages of `f_q` and `F_q` over moduli `3 ≤ q ≤ Q`.

use std::f64::consts::E;

use serde::Serialize;

use super::{lambda_sum, Boundary, Restriction};
use crate::arith::{totient, MangoldtTable};
use crate::characters::character_group;
use crate::error::{Error, Result};
use crate::summation::{CompensatedSum, Neumaier};

/// Largest `x` and `Q` accepted by the character-by-character path.
pub const BRUTEFORCE_BUDGET: u64 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem7Variant {
    /// `Σ_q (Σ_χ Σ_{n≤x} Λ(n)χ(n)/√n log(x/n) − 4√x)`.
    Eq126,
    /// `Σ_q Σ_χ Σ_{n≤xe²} Λ(n)χ(n)/√n log(x/n)`.
    Eq127,
}

impl Theorem7Variant {
    /// Leading-order size: `4√x(x/9 − Q)` and `−(8/9)e³x√x` respectively.
    pub fn reference(self, x: f64, q_max: u64) -> f64 {
        match self {
            Theorem7Variant::Eq126 => 4.0 * x.sqrt() * (x / 9.0 - q_max as f64),
            Theorem7Variant::Eq127 => -(8.0 / 9.0) * E.powi(3) * x * x.sqrt(),
        }
    }

    fn upper(self, x: f64) -> f64 {
        match self {
            Theorem7Variant::Eq126 => x,
            Theorem7Variant::Eq127 => x * E * E,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem7Path {
    /// Every character of every modulus, summed directly.
    Bruteforce,
    /// Orders exchanged: `Σ_n Λ(n)/√n log(x/n) · D_Q(n)`.
    Fast,
}

/// `D_Q(n) = Σ_{3≤q≤Q, q | n−1} φ(q)`.
///
/// From `Σ_{d|m} φ(d) = m` with `m = n − 1`: drop `q = 1`, `q = 2` (when `m`
/// is even) and every divisor `q > Q`, written `q = m/e` with `e < m/Q`.
pub fn divisor_weight(n: u64, q_max: u64) -> u64 {
    if n < 2 {
        return 0;
    }
    let m = n - 1;
    let mut d = m - 1 - u64::from(m.is_multiple_of(2));
    let mut e = 1;
    while e * q_max < m {
        if m.is_multiple_of(e) {
            d -= totient(m / e);
        }
        e += 1;
    }
    d
}

pub fn theorem7_sum(
    x: f64,
    q_max: u64,
    table: &MangoldtTable,
    path: Theorem7Path,
    variant: Theorem7Variant,
) -> Result<CompensatedSum> {
    if q_max < 3 {
        return Err(Error::Domain(format!("Theorem 7 sums need Q >= 3, got {q_max}")));
    }
    if !(x >= 2.0) {
        return Err(Error::Domain(format!("Theorem 7 sums need x >= 2, got {x}")));
    }
    let lx = x.ln();
    let upper = variant.upper(x);
    let main = match variant {
        Theorem7Variant::Eq126 => -4.0 * x.sqrt() * (q_max - 2) as f64,
        Theorem7Variant::Eq127 => 0.0,
    };
    match path {
        Theorem7Path::Fast => {
            if (q_max as f64) < x {
                return Err(Error::Hypothesis(format!(
                    "the divisor collapse needs Q >= x (Q = {q_max}, x = {x})"
                )));
            }
            let s = lambda_sum(table, upper, Boundary::Full, &Restriction::All, |t| {
                (lx - t.ln_n) / (t.n as f64).sqrt() * divisor_weight(t.n, q_max) as f64
            })?;
            Ok(s.affine(1.0, main))
        }
        Theorem7Path::Bruteforce => {
            if x > BRUTEFORCE_BUDGET as f64 || q_max > BRUTEFORCE_BUDGET {
                return Err(Error::Capacity {
                    requested: (x.ceil() as u64).max(q_max),
                    ceiling: BRUTEFORCE_BUDGET,
                });
            }
            table.check_range(upper)?;
            let mut acc = Neumaier::new();
            let mut bound = 0.0;
            for q in 3..=q_max {
                let group = character_group(q)?;
                for chi in group.characters() {
                    let s = lambda_sum(
                        table,
                        upper,
                        Boundary::Full,
                        &Restriction::Character(chi.clone()),
                        |t| (lx - t.ln_n) / (t.n as f64).sqrt(),
                    )?;
                    acc.add(s.value);
                    bound += s.comp_bound;
                }
                debug_assert_eq!(group.len() as u64, totient(q));
            }
            let total = acc.finish();
            Ok(CompensatedSum {
                value: total.value,
                n_terms: total.n_terms,
                comp_bound: total.comp_bound + bound,
            }
            .affine(1.0, main))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_weight_against_enumeration() {
        for q_max in [3u64, 7, 20, 100] {
            for n in 2..400u64 {
                let m = n - 1;
                let direct: u64 = (3..=q_max).filter(|q| m % q == 0).map(totient).sum();
                assert_eq!(divisor_weight(n, q_max), direct, "n={n} Q={q_max}");
            }
        }
    }

    #[test]
    fn collapse_for_large_q() {
        // n − 3 for odd prime powers, 2^k − 2 for powers of two
        assert_eq!(divisor_weight(7, 100), 4);
        assert_eq!(divisor_weight(8, 100), 6);
        assert_eq!(divisor_weight(2, 100), 0);
    }

    #[test]
    fn paths_agree_small() {
        let t = MangoldtTable::build(2000).unwrap();
        for v in [Theorem7Variant::Eq126, Theorem7Variant::Eq127] {
            let a = theorem7_sum(150.0, 150, &t, Theorem7Path::Bruteforce, v).unwrap().value;
            let b = theorem7_sum(150.0, 150, &t, Theorem7Path::Fast, v).unwrap().value;
            assert!((a - b).abs() < 1e-7, "{v:?}: {a} vs {b}");
        }
    }

    #[test]
    fn guards() {
        let t = MangoldtTable::build(100_000).unwrap();
        assert!(matches!(
            theorem7_sum(100.0, 50, &t, Theorem7Path::Fast, Theorem7Variant::Eq126),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            theorem7_sum(3000.0, 3000, &t, Theorem7Path::Bruteforce, Theorem7Variant::Eq126),
            Err(Error::Capacity { .. })
        ));
    }
}
