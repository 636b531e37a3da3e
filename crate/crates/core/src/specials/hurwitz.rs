//! Hurwitz zeta `ζ(s, a) = Σ_{n≥0} (n + a)^{-s}` by Euler–Maclaurin.

use num_complex::Complex64;

use super::gamma::BERNOULLI;
use super::jet::{Jet, SeriesScalar};
use crate::error::{Error, Result};

/// `1/(2k)!` for `k = 1..=12`.
const INV_EVEN_FACTORIAL: [f64; 12] = {
    let mut out = [0.0; 12];
    let mut f = 1.0;
    let mut k = 1;
    while k <= 24 {
        f *= k as f64;
        if k % 2 == 0 {
            out[k / 2 - 1] = 1.0 / f;
        }
        k += 1;
    }
    out
};

/// Number of directly summed terms for a given `s`.
pub fn shift_terms(s: Complex64) -> usize {
    20usize.max(s.norm().ceil() as usize + 10)
}

/// The expansion itself. With `regular` set, returns `ζ(s, a) − 1/(s − 1)`,
/// which is entire in `s`.
fn euler_maclaurin<T: SeriesScalar>(s: Complex64, a: f64, regular: bool) -> T {
    let n = shift_terms(s);
    let mut acc = T::constant(Complex64::new(0.0, 0.0));
    for k in 0..n {
        acc = acc + T::pow_neg((k as f64 + a).ln(), s);
    }
    let big = n as f64 + a;
    let l = big.ln();
    let p = T::pow_neg(l, s);
    let pole = if regular {
        T::pole_remainder(l, s)
    } else {
        p.scale(big.into()) * (T::variable(s) - T::constant(1.0.into())).recip()
    };
    acc = acc + pole + p.scale(0.5.into());
    // term_k = s(s+1)…(s+2k−2) · big^{−s−2k+1}
    let mut term = T::variable(s) * p.scale((1.0 / big).into());
    let inv_big2 = 1.0 / (big * big);
    for k in 1..=12 {
        acc = acc + term.scale((BERNOULLI[k - 1] * INV_EVEN_FACTORIAL[k - 1]).into());
        let j = (2 * k) as f64;
        let rise = (T::variable(s) + T::constant((j - 1.0).into())) * (T::variable(s) + T::constant(j.into()));
        term = term * rise.scale(inv_big2.into());
    }
    acc
}

fn check(s: Complex64, a: f64) -> Result<()> {
    if !(a > 0.0 && a <= 1.0) {
        return Err(Error::Domain(format!("Hurwitz zeta needs 0 < a <= 1, got {a}")));
    }
    if !(s.re > -1.0) || !s.is_finite() {
        return Err(Error::Domain(format!("Hurwitz zeta needs Re s > -1, got {s}")));
    }
    Ok(())
}

fn check_pole(s: Complex64) -> Result<()> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "hurwitz_zeta",
            s: s.to_string(),
        });
    }
    Ok(())
}

pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    check(s, a)?;
    check_pole(s)?;
    Ok(euler_maclaurin::<Complex64>(s, a, false))
}

/// `∂ζ(s, a)/∂s`, from the same expansion differentiated term by term.
pub fn hurwitz_zeta_ds(s: Complex64, a: f64) -> Result<Complex64> {
    Ok(hurwitz_jet(s, a)?.d1)
}

/// `ζ(s, a)` with its first two `s`-derivatives.
pub fn hurwitz_jet(s: Complex64, a: f64) -> Result<Jet> {
    check(s, a)?;
    check_pole(s)?;
    let r: Jet = euler_maclaurin(s, a, true);
    let pole = (Jet::variable(s) - Jet::constant(1.0.into())).recip();
    Ok(r + pole)
}

/// `ζ(s, a) − 1/(s − 1)` with two derivatives; finite at `s = 1`.
pub fn hurwitz_regular_jet(s: Complex64, a: f64) -> Result<Jet> {
    check(s, a)?;
    Ok(euler_maclaurin(s, a, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Direct series with the integral tail estimate `∫_N^∞ (x+a)^{-s} dx`.
    fn series(s: f64, a: f64) -> f64 {
        let n = 200_000;
        let partial: f64 = (0..n).rev().map(|k| (k as f64 + a).powf(-s)).sum();
        partial + (n as f64 + a).powf(1.0 - s) / (s - 1.0) + 0.5 * (n as f64 + a).powf(-s)
    }

    #[test]
    fn zeta_two() {
        let v = hurwitz_zeta(c(2.0, 0.0), 1.0).unwrap();
        assert!((v.re - PI * PI / 6.0).abs() < 1e-14);
        assert!((series(2.0, 1.0) - PI * PI / 6.0).abs() < 1e-12);
        assert!((v.re - 1.644934).abs() < 1e-6);
    }

    #[test]
    fn zeta_zero_quarter() {
        let v = hurwitz_zeta(c(0.0, 0.0), 0.25).unwrap();
        assert!((v - c(0.25, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn zeta_two_half() {
        let v = hurwitz_zeta(c(2.0, 0.0), 0.5).unwrap();
        let oracle = series(2.0, 0.5);
        assert!((v.re - oracle).abs() < 1e-12);
        assert!((v.re - PI * PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn errors() {
        assert!(matches!(hurwitz_zeta(c(1.0, 0.0), 0.5), Err(Error::Pole { .. })));
        assert!(hurwitz_zeta(c(2.0, 0.0), 0.0).is_err());
        assert!(hurwitz_zeta(c(2.0, 0.0), 1.5).is_err());
        assert!(hurwitz_zeta(c(-1.5, 0.0), 0.5).is_err());
    }

    #[test]
    fn classical_derivative_values() {
        // ζ'(0) = −log(2π)/2 and ζ'(0, a) = log Γ(a) − log(2π)/2
        let d = hurwitz_zeta_ds(c(0.0, 0.0), 1.0).unwrap();
        assert!((d.re + 0.5 * (2.0 * PI).ln()).abs() < 1e-12);
        let d = hurwitz_zeta_ds(c(0.0, 0.0), 0.5).unwrap();
        assert!((d.re - (0.5 * PI.ln() - 0.5 * (2.0 * PI).ln())).abs() < 1e-12);
    }

    #[test]
    fn derivative_matches_richardson_differences() {
        let h = 1e-5;
        let mut count = 0;
        for &a in &[0.1, 0.25, 0.5, 0.77, 1.0] {
            for &(re, im) in &[
                (0.0, 0.0),
                (0.5, 0.0),
                (0.5, 14.1),
                (1.5, -3.0),
                (2.0, 0.0),
                (0.25, 40.0),
                (0.75, 100.0),
                (1.9, 7.7),
                (0.1, -0.3),
                (1.2, 0.5),
            ] {
                let s = c(re, im);
                let f = |d: f64| hurwitz_zeta(s + d, a).unwrap();
                let d1 = (f(h) - f(-h)) / (2.0 * h);
                let d2 = (f(2.0 * h) - f(-2.0 * h)) / (4.0 * h);
                let rich = (4.0 * d1 - d2) / 3.0;
                let exact = hurwitz_zeta_ds(s, a).unwrap();
                assert!((rich - exact).norm() <= 1e-6 * exact.norm().max(1.0), "s={s} a={a}");
                count += 1;
            }
        }
        assert_eq!(count, 50);
    }

    #[test]
    fn second_derivative_matches_differences() {
        let s = c(0.5, 0.0);
        let j = hurwitz_jet(s, 1.0).unwrap();
        let f = |d: f64| hurwitz_zeta_ds(s + d, 1.0).unwrap();
        let central = |h: f64| (f(h) - f(-h)) / (2.0 * h);
        let fd = (4.0 * central(5e-4) - central(1e-3)) / 3.0;
        assert!((fd - j.d2).norm() < 1e-8, "{fd} vs {}", j.d2);
        // ζ''(1/2) = -16.0083570139...
        assert!((j.d2.re + 16.008_357_013_928_66).abs() < 1e-11);
    }

    #[test]
    fn regular_part_is_finite_at_pole() {
        // ζ(s) − 1/(s−1) → γ as s → 1
        let r = hurwitz_regular_jet(c(1.0, 0.0), 1.0).unwrap();
        assert!((r.v.re - crate::specials::EULER_GAMMA).abs() < 1e-14);
        let near = hurwitz_regular_jet(c(1.0 + 1e-7, 0.0), 1.0).unwrap();
        assert!((near.v - r.v).norm() < 1e-8);
    }

    #[test]
    fn high_in_the_strip() {
        // first zeta zero
        let z = hurwitz_zeta(c(0.5, 14.134_725_141_734_694), 1.0).unwrap();
        assert!(z.norm() < 1e-9, "{z}");
        // reflection across the real axis is conjugation
        let a = hurwitz_zeta(c(0.3, 900.0), 0.7).unwrap();
        let b = hurwitz_zeta(c(0.3, -900.0), 0.7).unwrap();
        assert!((a - b.conj()).norm() <= 1e-10 * a.norm());
        // ζ(s, 1/2) = (2^s − 1) ζ(s)
        let s = c(1.5, 750.0);
        let lhs = hurwitz_zeta(s, 0.5).unwrap();
        let rhs = (Complex64::new(2.0, 0.0).powc(s) - 1.0) * hurwitz_zeta(s, 1.0).unwrap();
        assert!((lhs - rhs).norm() <= 1e-10 * lhs.norm());
    }
}
