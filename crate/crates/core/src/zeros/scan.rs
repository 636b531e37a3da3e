//! Sign-change scanning and bisection of rotated critical-line functions.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::critical::{DirichletLine, ZetaLine};
use super::{ZeroLabel, ZeroSet, ZeroSource};
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};

pub const MAX_ZETA_HEIGHT: f64 = 5000.0;
pub const MAX_L_HEIGHT: f64 = 1000.0;
pub const MAX_SCAN_MODULUS: u64 = 100;

/// Parameters of the zero scan.
#[derive(Debug, Clone, Copy)]
pub struct ScanConfig {
    pub step: f64,
    /// Step of the automatic rescan after a count mismatch.
    pub refine_step: f64,
    /// Bisection stops once the bracket is narrower than this.
    pub tolerance: f64,
    /// Allowed distance between the found count and the smooth count.
    pub count_slack: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            step: 0.05,
            refine_step: 0.01,
            tolerance: 1e-10,
            count_slack: 2.0,
        }
    }
}

/// Riemann–von Mangoldt main term `(t/2π) log(t/2πe) + 7/8`.
pub fn riemann_von_mangoldt(t: f64) -> f64 {
    t / (2.0 * PI) * (t / (2.0 * PI * std::f64::consts::E)).ln() + 0.875
}

/// Smooth count of zeros of `L(s, χ)` with `0 < γ ≤ t` for primitive `χ` mod `q`.
pub fn dirichlet_zero_count(q: u64, t: f64) -> f64 {
    t / (2.0 * PI) * (q as f64 * t / (2.0 * PI * std::f64::consts::E)).ln()
}

/// Roots of `f` in `[lo, hi]` located by sign changes on a uniform grid and
/// bisected to `tolerance`. Grid evaluation and bisection run in parallel;
/// results are collected in grid order.
fn scan<F>(f: &F, lo: f64, hi: f64, step: f64, tolerance: f64) -> Vec<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    let n = ((hi - lo) / step).ceil() as usize;
    let grid: Vec<f64> = (0..=n).map(|k| (lo + k as f64 * step).min(hi)).collect();
    let values: Vec<f64> = grid.par_iter().map(|&t| f(t)).collect();
    let mut brackets = Vec::new();
    for k in 0..n {
        let (fa, fb) = (values[k], values[k + 1]);
        if fa == 0.0 {
            // an exact grid hit is kept once, as the left end of its bracket
            if k > 0 {
                brackets.push((grid[k], grid[k], fa));
            }
        } else if fa * fb < 0.0 {
            brackets.push((grid[k], grid[k + 1], fa));
        }
    }
    brackets
        .par_iter()
        .map(|&(mut a, mut b, fa)| {
            while b - a > tolerance {
                let m = 0.5 * (a + b);
                let fm = f(m);
                if fm == 0.0 {
                    return m;
                }
                if (fm < 0.0) == (fa < 0.0) {
                    a = m;
                } else {
                    b = m;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Zeros of `ζ(s)` on the critical line with `0 < γ ≤ t_max`.
pub fn compute_zeta_zeros(t_max: f64) -> Result<ZeroSet> {
    compute_zeta_zeros_with(t_max, ScanConfig::default())
}

pub fn compute_zeta_zeros_with(t_max: f64, config: ScanConfig) -> Result<ZeroSet> {
    if !(t_max > 0.0 && t_max <= MAX_ZETA_HEIGHT) {
        return Err(Error::Domain(format!(
            "compute_zeta_zeros needs 0 < t_max <= {MAX_ZETA_HEIGHT}, got {t_max}"
        )));
    }
    let line = ZetaLine::new(t_max);
    let f = |t: f64| line.hardy_z(t);
    let expected = if t_max < 14.0 { 0.0 } else { riemann_von_mangoldt(t_max) };
    let ordinates = scan_with_refinement(&f, 0.0, t_max, expected, config)?;
    Ok(ZeroSet::new(
        ZeroLabel::Zeta,
        ordinates,
        Vec::new(),
        config.tolerance.max(1e-10) * 10.0,
        ZeroSource::Computed { t_max },
    ))
}

fn scan_with_refinement<F>(f: &F, lo: f64, hi: f64, expected: f64, config: ScanConfig) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64 + Sync,
{
    let found = scan(f, lo, hi, config.step, config.tolerance);
    if (found.len() as f64 - expected).abs() <= config.count_slack {
        return Ok(found);
    }
    let found = scan(f, lo, hi, config.refine_step, config.tolerance);
    if (found.len() as f64 - expected).abs() <= config.count_slack {
        return Ok(found);
    }
    Err(Error::Completeness {
        found: found.len(),
        expected,
        t_max: hi,
    })
}

/// Zeros of `L(s, χ)` on the critical line up to height `t_max`. For complex
/// `χ` the negative ordinates are scanned as well and stored separately.
pub fn compute_dirichlet_zeros(chi: &DirichletCharacter, t_max: f64) -> Result<ZeroSet> {
    compute_dirichlet_zeros_with(chi, t_max, ScanConfig::default())
}

pub fn compute_dirichlet_zeros_with(chi: &DirichletCharacter, t_max: f64, config: ScanConfig) -> Result<ZeroSet> {
    if !(t_max > 0.0 && t_max <= MAX_L_HEIGHT) {
        return Err(Error::Domain(format!(
            "compute_dirichlet_zeros needs 0 < t_max <= {MAX_L_HEIGHT}, got {t_max}"
        )));
    }
    if chi.modulus() > MAX_SCAN_MODULUS {
        return Err(Error::Capacity {
            requested: chi.modulus(),
            ceiling: MAX_SCAN_MODULUS,
        });
    }
    let line = DirichletLine::new(chi, t_max)?;
    let q = chi.modulus();
    // the smooth count has an O(1) constant; allow for it on short ranges
    let expected = dirichlet_zero_count(q, t_max).max(0.0);
    let f = |t: f64| line.hardy_z(t);
    // start just above 0 so a central zero is not counted as an ordinate
    let lo = config.step / 2.0;
    let positive = scan_with_refinement(&f, lo, t_max, expected, config)?;
    let negative = if chi.is_real() {
        Vec::new()
    } else {
        let g = |t: f64| line.hardy_z(-t);
        scan_with_refinement(&g, lo, t_max, expected, config)?
    };
    Ok(ZeroSet::new(
        ZeroLabel::Dirichlet {
            modulus: q,
            exponents: chi.exponent_vector().to_vec(),
        },
        positive,
        negative,
        config.tolerance.max(1e-10) * 10.0,
        ZeroSource::Computed { t_max },
    ))
}
