//! Hurwitz–Lerch `Φ(z, s, a) = Σ_{n≥0} z^n (n + a)^{-s}` on `|z| < 1`.

use crate::error::{Error, Result};

const TAIL: f64 = 1e-14;

pub fn lerch_phi(z: f64, s: f64, a: f64) -> Result<f64> {
    if !(z.abs() < 1.0) {
        return Err(Error::Domain(format!("lerch_phi needs |z| < 1, got {z}")));
    }
    if !(a > 0.0) {
        return Err(Error::Domain(format!("lerch_phi needs a > 0, got {a}")));
    }
    let mut sum = a.powf(-s);
    if z == 0.0 {
        return Ok(sum);
    }
    let mut zn = 1.0;
    for n in 1u64.. {
        zn *= z;
        let term = zn * (n as f64 + a).powf(-s);
        sum += term;
        // later term ratios are bounded by r, so the tail is at most |term|·r/(1−r)
        let growth = ((n as f64 + 1.0 + a) / (n as f64 + a)).powf(-s);
        let r = z.abs() * growth.max(1.0);
        if r < 1.0 && term.abs() * r / (1.0 - r) < TAIL {
            break;
        }
    }
    Ok(sum)
}
