//! Digamma and complex log-Gamma by shifted asymptotic series.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_2, B_4, …, B_24`.
pub(crate) const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

const SHIFT_TO: f64 = 10.0;

/// `ψ(x) = Γ'(x)/Γ(x)` for `x > 0`.
pub fn digamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("digamma needs finite x > 0, got {x}")));
    }
    let mut x = x;
    let mut shift = 0.0;
    while x < SHIFT_TO {
        shift -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut tail = 0.0;
    let mut p = inv2;
    for k in 1..=8 {
        tail += BERNOULLI[k - 1] / (2 * k) as f64 * p;
        p *= inv2;
    }
    Ok(shift + x.ln() - 0.5 / x - tail)
}

/// Principal-branch-continuous `log Γ(z)` for `Re z > 0`.
///
/// The recurrence shift adds `log z + log(z+1) + …` with principal logs,
/// each continuous in `Im z` on the right half-plane, so the result is the
/// analytic continuation along vertical lines.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) {
        return Err(Error::Domain(format!("ln_gamma needs Re z > 0, got {z}")));
    }
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.re < SHIFT_TO {
        shift -= z.ln();
        z += 1.0;
    }
    let half_ln_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    let mut s = (z - 0.5) * z.ln() - z + half_ln_2pi;
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut p = inv;
    for k in 1..=8 {
        s += BERNOULLI[k - 1] / ((2 * k) * (2 * k - 1)) as f64 * p;
        p *= inv2;
    }
    Ok(s + shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specials::EULER_GAMMA;
    use std::f64::consts::PI;

    #[test]
    fn digamma_classical_values() {
        assert!((digamma(1.0).unwrap() + EULER_GAMMA).abs() < 1e-15);
        let q = digamma(0.25).unwrap();
        assert!((q - (-PI / 2.0 - 3.0 * 2f64.ln() - EULER_GAMMA)).abs() < 1e-14);
        assert!((q + 4.227454).abs() < 1e-6);
        let tq = digamma(0.75).unwrap();
        assert!((tq - (PI / 2.0 - 3.0 * 2f64.ln() - EULER_GAMMA)).abs() < 1e-14);
        assert!((tq + 1.085861).abs() < 1e-6);
        assert!(digamma(0.0).is_err());
        assert!(digamma(-1.5).is_err());
    }

    #[test]
    fn digamma_recurrence_on_grid() {
        // ψ(x+1) = ψ(x) + 1/x
        let mut x = 0.1;
        while x <= 100.0 {
            let lhs = digamma(x + 1.0).unwrap();
            let rhs = digamma(x).unwrap() + 1.0 / x;
            assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0), "x={x}");
            x += 0.37;
        }
        // ψ(1/2) = −γ − 2 log 2
        assert!((digamma(0.5).unwrap() + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn ln_gamma_real_axis() {
        // Γ(5) = 24, Γ(1/2) = √π
        assert!((ln_gamma(Complex64::new(5.0, 0.0)).unwrap().re - 24f64.ln()).abs() < 1e-13);
        assert!((ln_gamma(Complex64::new(0.5, 0.0)).unwrap().re - 0.5 * PI.ln()).abs() < 1e-14);
    }

    #[test]
    fn ln_gamma_recurrence_and_reflection_modulus() {
        let z = Complex64::new(0.3, 7.5);
        let a = ln_gamma(z + 1.0).unwrap();
        let b = ln_gamma(z).unwrap() + z.ln();
        assert!((a - b).norm() < 1e-12);
        // |Γ(1/2 + it)|² = π / cosh(πt)
        let t = 3.0;
        let g = ln_gamma(Complex64::new(0.5, t)).unwrap();
        assert!((2.0 * g.re - (PI / (PI * t).cosh()).ln()).abs() < 1e-12);
    }

    #[test]
    fn ln_gamma_branch_is_continuous() {
        let mut prev = ln_gamma(Complex64::new(0.25, 0.0)).unwrap().im;
        let mut t = 0.0;
        while t < 500.0 {
            t += 0.5;
            let cur = ln_gamma(Complex64::new(0.25, t)).unwrap().im;
            assert!((cur - prev).abs() < 5.0, "jump at t={t}");
            prev = cur;
        }
    }
}
