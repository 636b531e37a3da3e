//! The screw function `g(t) = g_0(t) + g_∞(t)` attached to `ζ(s)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{f_log, Restriction};
use crate::arith::MangoldtTable;
use crate::error::Result;
use crate::specials::{digamma, hurwitz_zeta, lerch_phi};

/// Non-archimedean part, evaluated as `f_log(x) − 4(√x + 1/√x − 2)` at `x = e^{|t|}`.
pub fn screw_g0(t: f64, table: &MangoldtTable) -> Result<f64> {
    let x = t.abs().exp();
    let f = f_log(x, table, &Restriction::All)?.value;
    Ok(f - 4.0 * (x.sqrt() + 1.0 / x.sqrt() - 2.0))
}

/// Archimedean part `−(|t|/2)(ψ(1/4) − log π) − (1/4)(ζ(2, 1/4) − e^{−|t|/2} Φ(e^{−2|t|}, 2, 1/4))`.
pub fn screw_ginf(t: f64) -> Result<f64> {
    let a = t.abs();
    if a == 0.0 {
        return Ok(0.0);
    }
    // Φ(1, 2, a) is the Hurwitz value ζ(2, a)
    let phi_one = hurwitz_zeta(Complex64::new(2.0, 0.0), 0.25)?.re;
    let phi = lerch_phi((-2.0 * a).exp(), 2.0, 0.25)?;
    Ok(-(a / 2.0) * (digamma(0.25)? - PI.ln()) - 0.25 * (phi_one - (-a / 2.0).exp() * phi))
}

pub fn screw_total(t: f64, table: &MangoldtTable) -> Result<f64> {
    Ok(screw_g0(t, table)? + screw_ginf(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanish_at_origin() {
        let t = MangoldtTable::build(100).unwrap();
        assert_eq!(screw_g0(0.0, &t).unwrap(), 0.0);
        assert_eq!(screw_ginf(0.0).unwrap(), 0.0);
    }

    #[test]
    fn even_in_t() {
        let t = MangoldtTable::build(10_000).unwrap();
        for s in [0.5, 3.0, 7.25] {
            assert_eq!(screw_total(s, &t).unwrap(), screw_total(-s, &t).unwrap());
        }
    }

    #[test]
    fn ginf_small_t_is_continuous() {
        // Σ n zⁿ/(n+1/4)² diverges at z = 1, so g∞ vanishes like t log t
        let a = screw_ginf(1e-3).unwrap();
        let b = screw_ginf(1e-6).unwrap();
        assert!(b.abs() < a.abs() && a.abs() < 0.01, "{a} {b}");
    }

    #[test]
    fn range_error_beyond_table() {
        let t = MangoldtTable::build(1000).unwrap();
        assert!(screw_g0(8.0, &t).is_err());
    }
}
