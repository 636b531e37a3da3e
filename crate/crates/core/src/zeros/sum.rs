//! `Σ_ρ x^{ρ−1/2}/(ρ−1/2)^k` for `k = 1, 2` over a truncated zero set.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::ZeroSet;
use crate::error::{Error, Result};
use crate::summation::{block_sum, block_sum_complex};

/// Largest tolerated phase error `γ_max · precision · |log x|`.
pub const PHASE_LIMIT: f64 = 1e-4;

/// Bound on `|N(t) − smooth(t)|` used for the power-2 tail; `|S(t)| < 3`
/// throughout the supported height range.
const COUNT_DEVIATION: f64 = 3.0;

/// Which zeros enter a truncated sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum Truncation {
    /// Every ordinate of the set.
    All,
    /// The first `n` ordinates on each side of the real axis.
    Count(usize),
    /// Ordinates with `|γ| ≤ T`.
    Height(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroSum {
    /// Real part; the whole sum for self-conjugate sets.
    pub value: f64,
    /// Imaginary part, zero for self-conjugate sets.
    pub imag: f64,
    /// Zeros summed, counting both members of a conjugate pair.
    pub n_terms: u64,
    pub comp_bound: f64,
    /// Height actually reached, the largest `|γ|` summed.
    pub height: f64,
    /// For power 2 an upper bound on the omitted terms; for power 1 a
    /// heuristic size of the oscillating tail.
    pub tail: f64,
}

fn cut(ordinates: &[f64], truncation: Truncation) -> &[f64] {
    match truncation {
        Truncation::All => ordinates,
        Truncation::Count(n) => &ordinates[..n.min(ordinates.len())],
        Truncation::Height(t) => &ordinates[..ordinates.partition_point(|&g| g <= t)],
    }
}

/// Upper bound on `Σ_{γ>T} 1/γ²` over one side of the axis for conductor `q`.
fn power2_tail(q: u64, t: f64) -> f64 {
    if t <= 0.0 {
        return f64::INFINITY;
    }
    ((q as f64 * t / (2.0 * PI)).ln() + 1.0) / (2.0 * PI * t) + 2.0 * COUNT_DEVIATION / (t * t)
}

/// Typical size of `|Σ_{γ>T} sin(γL)/γ|` over one side: the smooth density
/// contributes `log(qT/2π)/(2πTL)`, the zero irregularity `sqrt(L/T)/π`.
fn power1_tail(q: u64, t: f64, log_x: f64) -> f64 {
    if log_x == 0.0 {
        return 0.0;
    }
    if t <= 0.0 {
        return f64::INFINITY;
    }
    let l = log_x.abs();
    (1.0 / PI) * (((q as f64 * t / (2.0 * PI)).ln() + 1.0) / (t * l) + (l / t).sqrt())
}

/// Validated slices of positive and negative ordinates, the height reached
/// and where the omitted tail starts.
fn prepare(x: f64, zeros: &ZeroSet, truncation: Truncation) -> Result<(&[f64], &[f64], f64, f64)> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("zero sums need x > 0, got {x}")));
    }
    match truncation {
        Truncation::Height(t) if !(t > 0.0) || t > zeros.max_ordinate() => {
            return Err(Error::Domain(format!(
                "truncation height {t} outside (0, {}]",
                zeros.max_ordinate()
            )));
        }
        Truncation::Count(n) if n > zeros.len() => {
            return Err(Error::Domain(format!("{n} zeros requested, set has {}", zeros.len())));
        }
        _ => {}
    }
    let pos = cut(zeros.ordinates(), truncation);
    let neg = cut(zeros.negative_ordinates(), truncation);
    let height = pos
        .last()
        .copied()
        .unwrap_or(0.0)
        .max(neg.last().copied().unwrap_or(0.0));
    let phase_error = height * zeros.precision() * x.ln().abs();
    if phase_error > PHASE_LIMIT {
        return Err(Error::Precision {
            x,
            phase_error,
            limit: PHASE_LIMIT,
        });
    }
    // tails start at the truncation height or, for a count, at the last zero kept
    let tail_from = match truncation {
        Truncation::Height(t) => t,
        _ => height,
    };
    Ok((pos, neg, height, tail_from))
}

/// `Σ_{|γ|≤T} x^{ρ−s}/(ρ−s)` with `ρ = 1/2 + iγ`, for any `s` off the zeros.
///
/// Self-conjugate sets contribute `±γ` for each listed ordinate. The tail is
/// the power-1 heuristic scaled by `x^{1/2 − Re s}`.
pub fn zero_sum_at(x: f64, zeros: &ZeroSet, s: Complex64, truncation: Truncation) -> Result<ZeroSum> {
    let (pos, neg, height, tail_from) = prepare(x, zeros, truncation)?;
    let log_x = x.ln();
    let term = |gamma: f64| -> Complex64 {
        let d = Complex64::new(0.5 - s.re, gamma - s.im);
        (d * log_x).exp() / d
    };
    let near = |gamma: f64| (Complex64::new(0.5 - s.re, gamma - s.im)).norm() < 1e-12;
    let mirrored = zeros.self_conjugate();
    if let Some(&g) = pos.iter().find(|&&g| near(g) || (mirrored && near(-g))) {
        return Err(Error::Singularity {
            function: "ρ − s",
            s: s.to_string(),
            magnitude: (Complex64::new(0.5, g) - s)
                .norm()
                .min((Complex64::new(0.5, -g) - s).norm()),
        });
    }
    if let Some(&g) = neg.iter().find(|&&g| near(-g)) {
        return Err(Error::Singularity {
            function: "ρ − s",
            s: s.to_string(),
            magnitude: (Complex64::new(0.5, -g) - s).norm(),
        });
    }
    let sp = block_sum_complex(pos.len(), |i| {
        let v = term(pos[i]);
        if mirrored {
            v + term(-pos[i])
        } else {
            v
        }
    });
    let sn = block_sum_complex(neg.len(), |i| term(-neg[i]));
    let q = zeros.label().conductor();
    let scale = (log_x * (0.5 - s.re)).exp();
    Ok(ZeroSum {
        value: sp.re.value + sn.re.value,
        imag: sp.im.value + sn.im.value,
        n_terms: if mirrored { 2 * pos.len() } else { pos.len() + neg.len() } as u64,
        comp_bound: sp.re.comp_bound + sn.re.comp_bound + sp.im.comp_bound + sn.im.comp_bound,
        height,
        tail: 2.0 * scale * power1_tail(q, tail_from, log_x),
    })
}

/// `Σ_{|γ|≤T} x^{iγ}/(iγ)^power` with conjugate pairs combined.
///
/// For a self-conjugate set this is `2Σ sin(γ log x)/γ` (power 1) or
/// `−2Σ cos(γ log x)/γ²` (power 2). Otherwise the listed negative ordinates
/// are summed separately and the result may have an imaginary part.
pub fn zero_sum(x: f64, zeros: &ZeroSet, power: u32, truncation: Truncation) -> Result<ZeroSum> {
    if power != 1 && power != 2 {
        return Err(Error::Domain(format!("zero_sum power must be 1 or 2, got {power}")));
    }
    let (pos, neg, height, tail_from) = prepare(x, zeros, truncation)?;
    let log_x = x.ln();
    let q = zeros.label().conductor();
    let one_side = if power == 2 {
        power2_tail(q, tail_from)
    } else {
        power1_tail(q, tail_from, log_x)
    };
    let tail = 2.0 * one_side;

    if zeros.self_conjugate() {
        let s = if power == 1 {
            block_sum(pos.len(), |i| (pos[i] * log_x).sin() / pos[i])
        } else {
            block_sum(pos.len(), |i| (pos[i] * log_x).cos() / (pos[i] * pos[i]))
        };
        let scale = if power == 1 { 2.0 } else { -2.0 };
        let s = s.affine(scale, 0.0);
        return Ok(ZeroSum {
            value: s.value,
            imag: 0.0,
            n_terms: 2 * pos.len() as u64,
            comp_bound: s.comp_bound,
            height,
            tail,
        });
    }

    // x^{iγ}/(iγ)^k for γ = +g and γ = −g
    let term = |g: f64| -> Complex64 {
        let phase = Complex64::from_polar(1.0, g * log_x);
        let denom = Complex64::new(0.0, g).powu(power);
        phase / denom
    };
    let sp = block_sum_complex(pos.len(), |i| term(pos[i]));
    let sn = block_sum_complex(neg.len(), |i| term(-neg[i]));
    Ok(ZeroSum {
        value: sp.re.value + sn.re.value,
        imag: sp.im.value + sn.im.value,
        n_terms: (pos.len() + neg.len()) as u64,
        comp_bound: sp.re.comp_bound + sn.re.comp_bound + f64::EPSILON * (sp.re.value + sn.re.value).abs(),
        height,
        tail,
    })
}
