//! Central constants at `s = 1/2` and the character sum `C(q)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::gamma::digamma;
use super::lfunc::{l_jet, zeta_jet, ZERO_GUARD};
use super::EULER_GAMMA;
use crate::characters::character_group;
use crate::error::{Error, Result};

const HALF: Complex64 = Complex64::new(0.5, 0.0);

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CentralConstants {
    /// `ζ'/ζ(1/2) = (π/2 + log 8π + γ)/2`.
    pub zeta_logderiv_half: f64,
    /// The same quantity from the Hurwitz engine.
    pub zeta_logderiv_half_numeric: f64,
    /// `(ζ'/ζ)'(1/2)` from the Hurwitz engine.
    pub zeta_logderiv_prime_half: f64,
    pub digamma_quarter: f64,
    pub digamma_three_quarter: f64,
    pub euler_gamma: f64,
    /// `−ζ(1/2)`.
    pub minus_zeta_half: f64,
}

impl CentralConstants {
    pub fn compute() -> Result<Self> {
        let jet = zeta_jet(HALF)?;
        let (ld, ldp) = jet.log_derivative();
        Ok(Self {
            zeta_logderiv_half: (PI / 2.0 + (8.0 * PI).ln() + EULER_GAMMA) / 2.0,
            zeta_logderiv_half_numeric: ld.re,
            zeta_logderiv_prime_half: ldp.re,
            digamma_quarter: digamma(0.25)?,
            digamma_three_quarter: digamma(0.75)?,
            euler_gamma: EULER_GAMMA,
            minus_zeta_half: -jet.v.re,
        })
    }

    /// `ξ'/ξ(1/2) = ζ'/ζ(1/2) + (ψ(1/4) − log π)/2`, zero in exact arithmetic.
    pub fn xi_logderiv_half(&self) -> f64 {
        self.zeta_logderiv_half + (self.digamma_quarter - PI.ln()) / 2.0
    }
}

/// `π·e^{−ψ(1/4)}` (even) and `π·e^{−ψ(3/4)}` (odd): the moduli at which
/// `Re L'/L(1/2, χ)` would vanish.
pub fn threshold_moduli() -> (f64, f64) {
    (
        PI * (-digamma(0.25).expect("positive argument")).exp(),
        PI * (-digamma(0.75).expect("positive argument")).exp(),
    )
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CqValue {
    pub q: u64,
    /// Printed closed form, only for odd prime `q`.
    pub closed_form: Option<f64>,
    pub numeric_re: f64,
    pub numeric_im: f64,
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// `(q−1)/2·(log 8π + γ) − (q−2)/2·log q + log q/(√q − 1)`.
pub fn c_of_q_closed_form(q: u64) -> f64 {
    let qf = q as f64;
    (qf - 1.0) / 2.0 * ((8.0 * PI).ln() + EULER_GAMMA) - (qf - 2.0) / 2.0 * qf.ln() + qf.ln() / (qf.sqrt() - 1.0)
}

/// `C(q) = Σ_{χ mod q} L'/L(1/2, χ)`.
pub fn c_of_q(q: u64) -> Result<CqValue> {
    if q < 3 {
        return Err(Error::Domain(format!("C(q) needs q >= 3, got {q}")));
    }
    let group = character_group(q)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for chi in group.characters() {
        let jet = l_jet(HALF, chi)?;
        if jet.v.norm() < ZERO_GUARD {
            return Err(Error::Singularity {
                function: "L",
                s: format!("1/2 (q = {q}, χ = {:?})", chi.exponent_vector()),
                magnitude: jet.v.norm(),
            });
        }
        sum += jet.d1 / jet.v;
    }
    Ok(CqValue {
        q,
        closed_form: (q % 2 == 1 && is_prime(q)).then(|| c_of_q_closed_form(q)),
        numeric_re: sum.re,
        numeric_im: sum.im,
    })
}

/// Odd primes in `[lo, hi]`.
pub fn odd_primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(3)..=hi).filter(|&q| q % 2 == 1 && is_prime(q)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_constants() {
        let c = CentralConstants::compute().unwrap();
        assert!((c.zeta_logderiv_half - 2.68609).abs() < 5e-6);
        assert!((c.zeta_logderiv_half_numeric - c.zeta_logderiv_half).abs() < 1e-10);
        assert!((c.digamma_quarter + 4.22745).abs() < 5e-6);
        assert!((c.minus_zeta_half - 1.46035).abs() < 5e-6);
        assert!(c.xi_logderiv_half().abs() < 1e-12);
    }

    #[test]
    fn thresholds() {
        let (even, odd) = threshold_moduli();
        // printed values are truncated to three decimals
        assert!((0.0..1e-3).contains(&(even - 215.332)), "{even}");
        assert!((0.0..1e-3).contains(&(odd - 9.305)), "{odd}");
        assert!((even - 215.332_515_953_491).abs() < 1e-9);
        for t in [even, odd] {
            assert!((t - t.round()).abs() > 1e-3);
        }
    }

    #[test]
    fn c_three_closed_form() {
        let v = c_of_q(3).unwrap();
        let printed = ((8.0 * PI).ln() + EULER_GAMMA) - 0.5 * 3f64.ln() + 3f64.ln() / (3f64.sqrt() - 1.0);
        assert!((v.closed_form.unwrap() - printed).abs() < 1e-14);
        assert!((printed - 4.7529).abs() < 1e-4);
        assert!((v.numeric_re - printed).abs() < 1e-6);
    }

    #[test]
    fn imaginary_parts_cancel() {
        for q in [5, 7, 11] {
            assert!(c_of_q(q).unwrap().numeric_im.abs() < 1e-8);
        }
        assert!(c_of_q(8).unwrap().closed_form.is_none());
        assert!(c_of_q(2).is_err());
    }
}
