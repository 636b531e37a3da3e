//! Second-order jets in the variable `s`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Value, first and second derivative of a function of `s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub v: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Arithmetic needed by the Euler–Maclaurin engine, implemented both for
/// plain values and for jets so one expansion serves both.
pub trait SeriesScalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn constant(c: Complex64) -> Self;
    /// The identity function `s ↦ s`.
    fn variable(s: Complex64) -> Self;
    /// `b^{-s}` given `log b`.
    fn pow_neg(log_base: f64, s: Complex64) -> Self;
    fn scale(self, c: Complex64) -> Self;
    fn recip(self) -> Self;
    /// `(e^{-uL} − 1)/u` at `u = s − 1`, regular through `u = 0`.
    fn pole_remainder(log_base: f64, s: Complex64) -> Self;
}

impl SeriesScalar for Complex64 {
    fn constant(c: Complex64) -> Self {
        c
    }
    fn variable(s: Complex64) -> Self {
        s
    }
    fn pow_neg(log_base: f64, s: Complex64) -> Self {
        (-s * log_base).exp()
    }
    fn scale(self, c: Complex64) -> Self {
        self * c
    }
    fn recip(self) -> Self {
        self.inv()
    }
    fn pole_remainder(log_base: f64, s: Complex64) -> Self {
        Jet::pole_remainder(log_base, s).v
    }
}

impl Jet {
    pub fn new(v: Complex64, d1: Complex64, d2: Complex64) -> Self {
        Self { v, d1, d2 }
    }

    /// `f'/f` as a jet truncated to first order: returns `(f'/f, (f'/f)')`.
    pub fn log_derivative(&self) -> (Complex64, Complex64) {
        let r = self.d1 / self.v;
        (r, self.d2 / self.v - r * r)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(-self.v, -self.d1, -self.d2)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        )
    }
}

impl SeriesScalar for Jet {
    fn constant(c: Complex64) -> Self {
        Jet::new(c, ZERO, ZERO)
    }
    fn variable(s: Complex64) -> Self {
        Jet::new(s, Complex64::new(1.0, 0.0), ZERO)
    }
    fn pow_neg(log_base: f64, s: Complex64) -> Self {
        let v = (-s * log_base).exp();
        Jet::new(v, -log_base * v, log_base * log_base * v)
    }
    fn scale(self, c: Complex64) -> Self {
        Jet::new(self.v * c, self.d1 * c, self.d2 * c)
    }
    fn recip(self) -> Self {
        let r = self.v.inv();
        Jet::new(r, -self.d1 * r * r, (2.0 * self.d1 * self.d1 * r - self.d2) * r * r)
    }
    fn pole_remainder(log_base: f64, s: Complex64) -> Self {
        let u = s - 1.0;
        let l = log_base;
        if (u * l).norm() < 0.5 {
            // h(u) = Σ_{k≥1} (−L)^k u^{k−1}/k!, differentiated term by term
            let (mut v, mut d1, mut d2) = (ZERO, ZERO, ZERO);
            let mut c = 1.0; // (−L)^k / k!
            let (mut p1, mut p2, mut p3) = (Complex64::new(1.0, 0.0), ZERO, ZERO); // u^{k−1}, u^{k−2}, u^{k−3}
            for k in 1..80 {
                c *= -l / k as f64;
                let kf = k as f64;
                v += c * p1;
                d1 += c * (kf - 1.0) * p2;
                d2 += c * (kf - 1.0) * (kf - 2.0) * p3;
                (p3, p2, p1) = (
                    if k == 2 { Complex64::new(1.0, 0.0) } else { p3 * u },
                    if k == 1 { Complex64::new(1.0, 0.0) } else { p2 * u },
                    p1 * u,
                );
                if k > 3 && c.abs() * (1.0 + kf * kf) < 1e-18 {
                    break;
                }
            }
            Jet::new(v, d1, d2)
        } else {
            let e = (-u * l).exp();
            // g = e − 1, h = g/u
            let g = Jet::new(e - 1.0, -l * e, l * l * e);
            g * Jet::variable(u).recip()
        }
    }
}
