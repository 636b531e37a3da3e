//! Dirichlet L-functions through the Hurwitz decomposition.

use num_complex::Complex64;
use serde::Serialize;

use super::gamma::digamma;
use super::hurwitz::{hurwitz_jet, hurwitz_regular_jet};
use super::jet::{Jet, SeriesScalar};
use crate::characters::{induce_primitive, DirichletCharacter};
use crate::error::{Error, Result};

/// `|L|` below which a log-derivative is refused.
pub const ZERO_GUARD: f64 = 1e-13;
/// `|L(1/2, χ)|` below which a central value is flagged as a possible zero.
pub const CENTRAL_ZERO_FLAG: f64 = 1e-10;

/// Largest modulus accepted by the L-function routines.
pub const MAX_L_MODULUS: u64 = 10_000;

const HALF: Complex64 = Complex64::new(0.5, 0.0);

/// `ζ(s)` with two derivatives.
pub fn zeta_jet(s: Complex64) -> Result<Jet> {
    hurwitz_jet(s, 1.0).map_err(|e| match e {
        Error::Pole { s, .. } => Error::Pole { function: "zeta", s },
        other => other,
    })
}

/// `L(s, χ*)` for primitive `χ*`; the pole of each Hurwitz term cancels in
/// the character sum when `χ*` is non-principal.
fn primitive_jet(s: Complex64, chi: &DirichletCharacter) -> Result<Jet> {
    let q = chi.modulus();
    if q == 1 {
        return zeta_jet(s);
    }
    let mut acc = Jet::constant(Complex64::new(0.0, 0.0));
    for a in 1..q {
        if chi.index(a).is_some() {
            acc = acc + hurwitz_regular_jet(s, a as f64 / q as f64)?.scale(chi.value(a));
        }
    }
    Ok(acc * Jet::pow_neg((q as f64).ln(), s))
}

/// `Π_{p|q} (1 − χ*(p) p^{-s})` over primes dividing `q` but not the conductor.
fn euler_factor_jet(s: Complex64, chi: &DirichletCharacter, star: &DirichletCharacter) -> Jet {
    let mut acc = Jet::constant(Complex64::new(1.0, 0.0));
    for p in prime_divisors(chi.modulus()) {
        if !star.modulus().is_multiple_of(p) {
            let one = Jet::constant(Complex64::new(1.0, 0.0));
            acc = acc * (one - Jet::pow_neg((p as f64).ln(), s).scale(star.value(p)));
        }
    }
    acc
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_modulus(chi: &DirichletCharacter) -> Result<()> {
    if chi.modulus() > MAX_L_MODULUS {
        return Err(Error::Capacity {
            requested: chi.modulus(),
            ceiling: MAX_L_MODULUS,
        });
    }
    Ok(())
}

/// `L(s, χ)` with two derivatives; imprimitive characters go through `χ*`
/// and the finite Euler product.
pub fn l_jet(s: Complex64, chi: &DirichletCharacter) -> Result<Jet> {
    check_modulus(chi)?;
    let star = induce_primitive(chi);
    let base = primitive_jet(s, &star)?;
    Ok(base * euler_factor_jet(s, chi, &star))
}

pub fn dirichlet_l(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    Ok(l_jet(s, chi)?.v)
}

fn guarded(jet: Jet, s: Complex64, function: &'static str) -> Result<Jet> {
    let m = jet.v.norm();
    if m < ZERO_GUARD {
        return Err(Error::Singularity {
            function,
            s: s.to_string(),
            magnitude: m,
        });
    }
    Ok(jet)
}

/// `L'/L(s, χ)`.
pub fn l_logderiv(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    Ok(guarded(l_jet(s, chi)?, s, "L")?.log_derivative().0)
}

/// `(L'/L)'(s, χ) = L''/L − (L'/L)²`.
pub fn l_logderiv_prime(s: Complex64, chi: &DirichletCharacter) -> Result<Complex64> {
    Ok(guarded(l_jet(s, chi)?, s, "L")?.log_derivative().1)
}

/// `ζ'/ζ(s)`.
pub fn zeta_logderiv(s: Complex64) -> Result<Complex64> {
    Ok(guarded(zeta_jet(s)?, s, "zeta")?.log_derivative().0)
}

/// `(ζ'/ζ)'(s)`.
pub fn zeta_logderiv_prime(s: Complex64) -> Result<Complex64> {
    Ok(guarded(zeta_jet(s)?, s, "zeta")?.log_derivative().1)
}

/// Closed form of `Re L'/L(1/2, χ)` from the functional equation, valid for
/// primitive `χ` mod `q > 1`, extended to imprimitive `χ` by adding the real
/// part of the Euler-factor log-derivatives.
pub fn re_logderiv_half_closed_form(chi: &DirichletCharacter) -> Result<f64> {
    let star = induce_primitive(chi);
    let q = star.modulus();
    let base = if q == 1 {
        // ξ'/ξ(1/2) = 0 for ζ
        -(digamma(0.25)? - std::f64::consts::PI.ln()) / 2.0
    } else {
        0.5 * ((std::f64::consts::PI / q as f64).ln() - digamma(0.25 + star.kappa() as f64 / 2.0)?)
    };
    let euler = euler_factor_jet(HALF, chi, &star);
    Ok(base + (euler.d1 / euler.v).re)
}

/// Central data of `L(s, χ)` at `s = 1/2`.
#[derive(Debug, Clone, Serialize)]
pub struct LCentralData {
    pub modulus: u64,
    pub exponent_vector: Vec<u32>,
    pub l_half: (f64, f64),
    pub l_logderiv_half: (f64, f64),
    pub l_logderiv_prime_half: (f64, f64),
    pub re_logderiv_closed_form: f64,
    pub kappa: u8,
    /// Assumed order of vanishing at the centre; never estimated.
    pub m: u32,
    /// `|L(1/2, χ)|` fell below [`CENTRAL_ZERO_FLAG`].
    pub suspicious_central_zero: bool,
}

pub fn l_central_data(chi: &DirichletCharacter, m: u32) -> Result<LCentralData> {
    if m != 0 {
        return Err(Error::Domain(
            "central-value operations assume m = 0; a central zero needs the limit forms".into(),
        ));
    }
    let jet = l_jet(HALF, chi)?;
    let suspicious = jet.v.norm() < CENTRAL_ZERO_FLAG;
    let (ld, ldp) = guarded(jet, HALF, "L")?.log_derivative();
    Ok(LCentralData {
        modulus: chi.modulus(),
        exponent_vector: chi.exponent_vector().to_vec(),
        l_half: (jet.v.re, jet.v.im),
        l_logderiv_half: (ld.re, ld.im),
        l_logderiv_prime_half: (ldp.re, ldp.im),
        re_logderiv_closed_form: re_logderiv_half_closed_form(chi)?,
        kappa: induce_primitive(chi).kappa(),
        m,
        suspicious_central_zero: suspicious,
    })
}
