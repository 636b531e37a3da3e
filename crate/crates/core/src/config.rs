//! Acceptance windows and residual tolerances.
//!
//! The asymptotic statements behind the desk checks carry unquantified
//! `o(1)` and `O(1/log x)` rates, and truncated explicit formulas have no
//! published error bounds at finite height. Every such threshold lives here
//! so that it is visible and can be overridden by name.

use serde::Serialize;

use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` for a normalised ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Riesz sums against their central targets at the largest `x`.
    pub riesz_target_distance: f64,
    /// Constant `c` in `|χ₄ Riesz sum − target| ≤ c/log x`.
    pub chi_riesz_log_constant: f64,
    pub eq126_ratio: Window,
    pub eq127_ratio: Window,
    pub eq118_ratio: Window,
    pub f2_ratio: Window,
    pub sqrt_race_ratio: Window,
    pub titchmarsh_ratio: Window,
    /// Zeros used by the explicit-formula residual checks.
    pub residual_zero_count: usize,
    /// Power-2 oracle, `T` = [`Self::residual_zero_count`] zeros.
    pub eq301_residual: f64,
    /// `s = 1/2` oracle at the same `T`.
    pub eq307_residual: f64,
    pub eq309_residual: f64,
    pub eq405_residual: f64,
    /// Two independently summed paths over the same finite terms.
    pub two_path: f64,
    /// Theorem 7 character-by-character against the divisor collapse.
    pub theorem7_paths: f64,
    pub cq_agreement: f64,
    pub cq_imaginary: f64,
    /// `Re L'/L(1/2, χ)` against its closed form.
    pub logderiv_closed_form: f64,
    pub xi_identity: f64,
}

/// The configuration block used by the acceptance suite and the CLI.
pub const DEFAULT_TOLERANCES: Tolerances = Tolerances {
    riesz_target_distance: 0.5,
    chi_riesz_log_constant: 3.0,
    eq126_ratio: Window::new(0.7, 1.3),
    eq127_ratio: Window::new(0.7, 1.3),
    eq118_ratio: Window::new(0.7, 1.3),
    f2_ratio: Window::new(0.8, 1.2),
    sqrt_race_ratio: Window::new(0.5, 1.5),
    titchmarsh_ratio: Window::new(0.9, 1.1),
    residual_zero_count: 2000,
    eq301_residual: 0.02,
    eq307_residual: 0.05,
    eq309_residual: 0.05,
    eq405_residual: 0.02,
    two_path: 1e-9,
    theorem7_paths: 1e-6,
    cq_agreement: 1e-6,
    cq_imaginary: 1e-8,
    logderiv_closed_form: 1e-8,
    xi_identity: 1e-12,
};

impl Default for Tolerances {
    fn default() -> Self {
        DEFAULT_TOLERANCES
    }
}

impl Tolerances {
    /// Overrides one field by name. Windows take `lo,hi`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::Domain(format!("invalid value {value:?} for tolerance {key}"));
        let real = || value.trim().parse::<f64>().map_err(|_| bad());
        let window = || -> Result<Window> {
            let (a, b) = value.split_once(',').ok_or_else(bad)?;
            let w = Window::new(
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            );
            if w.lo <= w.hi {
                Ok(w)
            } else {
                Err(bad())
            }
        };
        match key {
            "riesz_target_distance" => self.riesz_target_distance = real()?,
            "chi_riesz_log_constant" => self.chi_riesz_log_constant = real()?,
            "eq126_ratio" => self.eq126_ratio = window()?,
            "eq127_ratio" => self.eq127_ratio = window()?,
            "eq118_ratio" => self.eq118_ratio = window()?,
            "f2_ratio" => self.f2_ratio = window()?,
            "sqrt_race_ratio" => self.sqrt_race_ratio = window()?,
            "titchmarsh_ratio" => self.titchmarsh_ratio = window()?,
            "residual_zero_count" => self.residual_zero_count = value.trim().parse().map_err(|_| bad())?,
            "eq301_residual" => self.eq301_residual = real()?,
            "eq307_residual" => self.eq307_residual = real()?,
            "eq309_residual" => self.eq309_residual = real()?,
            "eq405_residual" => self.eq405_residual = real()?,
            "two_path" => self.two_path = real()?,
            "theorem7_paths" => self.theorem7_paths = real()?,
            "cq_agreement" => self.cq_agreement = real()?,
            "cq_imaginary" => self.cq_imaginary = real()?,
            "logderiv_closed_form" => self.logderiv_closed_form = real()?,
            "xi_identity" => self.xi_identity = real()?,
            _ => return Err(Error::Domain(format!("unknown tolerance {key}"))),
        }
        Ok(())
    }
}
