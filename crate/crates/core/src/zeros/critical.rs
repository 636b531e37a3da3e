//! Rotated real functions on the critical line whose sign changes are zeros.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::characters::{root_number, DirichletCharacter};
use crate::error::{Error, Result};
use crate::specials::ln_gamma;

/// `B_{2k}/(2k)!` for `k = 1..=12`.
const EM_COEFF: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
    77_683.0 / 14_101_100_039_391_805_440_000.0,
    -236_364_091.0 / 1_693_824_136_731_743_669_452_800_000.0,
];

/// Euler–Maclaurin for `ζ(1/2 + it, a)` with `max(20, 3 + |t|/2)` direct
/// terms; logarithms and square roots of `k + a` are tabulated once.
#[derive(Debug, Clone)]
pub struct HurwitzLine {
    a: f64,
    logs: Vec<f64>,
    rsqrt: Vec<f64>,
}

impl HurwitzLine {
    pub fn new(a: f64, t_max: f64) -> Self {
        let n = Self::terms(t_max);
        let logs: Vec<f64> = (0..n).map(|k| (k as f64 + a).ln()).collect();
        let rsqrt = (0..n).map(|k| 1.0 / (k as f64 + a).sqrt()).collect();
        Self { a, logs, rsqrt }
    }

    fn terms(t: f64) -> usize {
        20usize.max((3.0 + t.abs() / 2.0).ceil() as usize)
    }

    /// `ζ(1/2 + it, a)`; `|t|` must not exceed the `t_max` given at construction.
    pub fn eval(&self, t: f64) -> Complex64 {
        let n = Self::terms(t);
        assert!(n <= self.logs.len(), "HurwitzLine built for a smaller t_max");
        let (mut re, mut im) = (0.0, 0.0);
        for k in 0..n {
            let (sin, cos) = (t * self.logs[k]).sin_cos();
            re += self.rsqrt[k] * cos;
            im -= self.rsqrt[k] * sin;
        }
        let s = Complex64::new(0.5, t);
        let big = n as f64 + self.a;
        let p = (-s * big.ln()).exp();
        let mut acc = Complex64::new(re, im) + p * big / (s - 1.0) + p * 0.5;
        let mut term = s * p / big;
        let inv_big2 = 1.0 / (big * big);
        for (k, c) in EM_COEFF.iter().enumerate() {
            acc += term * *c;
            let j = (2 * k + 2) as f64;
            term = term * (s + (j - 1.0)) * (s + j) * inv_big2;
        }
        acc
    }
}

/// `θ(t) = Im log Γ(1/4 + it/2) − (t/2) log π`.
pub fn riemann_siegel_theta(t: f64) -> f64 {
    ln_gamma(Complex64::new(0.25, t / 2.0)).expect("Re > 0").im - t / 2.0 * PI.ln()
}

/// `ζ(1/2 + it)` and the real rotation `Z(t) = e^{iθ(t)} ζ(1/2 + it)`.
#[derive(Debug, Clone)]
pub struct ZetaLine {
    line: HurwitzLine,
}

impl ZetaLine {
    pub fn new(t_max: f64) -> Self {
        Self {
            line: HurwitzLine::new(1.0, t_max),
        }
    }

    pub fn zeta(&self, t: f64) -> Complex64 {
        self.line.eval(t)
    }

    /// The rotated value before discarding its (numerically zero) imaginary part.
    pub fn rotated(&self, t: f64) -> Complex64 {
        Complex64::from_polar(1.0, riemann_siegel_theta(t)) * self.zeta(t)
    }

    pub fn hardy_z(&self, t: f64) -> f64 {
        self.rotated(t).re
    }
}

/// `Z_χ(t) = ε^{-1/2} e^{iθ_χ(t)} L(1/2 + it, χ)` for primitive `χ` mod `q > 1`,
/// with `θ_χ(t) = Im log Γ((1/2 + κ + it)/2) + (t/2) log(q/π)`; real on the line.
#[derive(Debug, Clone)]
pub struct DirichletLine {
    q: u64,
    kappa: u8,
    /// `(χ(a), ζ(·, a/q))` over units `a`.
    terms: Vec<(Complex64, HurwitzLine)>,
    unrotate: Complex64,
}

impl DirichletLine {
    pub fn new(chi: &DirichletCharacter, t_max: f64) -> Result<Self> {
        let q = chi.modulus();
        if q < 2 || !chi.is_primitive() {
            return Err(Error::Domain(format!(
                "critical-line scan needs a primitive character mod q > 1 (q = {q}, conductor {})",
                chi.conductor()
            )));
        }
        let eps = root_number(chi)?;
        let terms = (1..q)
            .filter(|&a| chi.index(a).is_some())
            .map(|a| (chi.value(a), HurwitzLine::new(a as f64 / q as f64, t_max)))
            .collect();
        Ok(Self {
            q,
            kappa: chi.kappa(),
            terms,
            unrotate: Complex64::from_polar(1.0, -eps.arg() / 2.0),
        })
    }

    pub fn l_value(&self, t: f64) -> Complex64 {
        let s = Complex64::new(0.5, t);
        let sum: Complex64 = self.terms.iter().map(|(c, h)| c * h.eval(t)).sum();
        sum * (-s * (self.q as f64).ln()).exp()
    }

    pub fn theta(&self, t: f64) -> f64 {
        let w = Complex64::new((0.5 + self.kappa as f64) / 2.0, t / 2.0);
        ln_gamma(w).expect("Re > 0").im + t / 2.0 * (self.q as f64 / PI).ln()
    }

    pub fn rotated(&self, t: f64) -> Complex64 {
        self.unrotate * Complex64::from_polar(1.0, self.theta(t)) * self.l_value(t)
    }

    pub fn hardy_z(&self, t: f64) -> f64 {
        self.rotated(t).re
    }
}
