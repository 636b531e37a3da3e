//! Logarithmic integral `li(x) = PV ∫_0^x dt / log t`.

use crate::error::{Error, Result};
use crate::specials::EULER_GAMMA;

/// Principal-value logarithmic integral.
///
/// For `x > 1` the value comes from `γ + log log x + Σ (log x)^k / (k·k!)`,
/// whose terms are all positive, so the only rounding is a few ulps of the
/// result. The constant `γ + log|log x|` is exactly the limit of the symmetric
/// window `(∫_0^{1-ε} + ∫_{1+ε}^x) dt / log t` as `ε → 0`. For `0 < x < 1`,
/// `li(x) = -E₁(-log x)`.
pub fn log_integral(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("li(x) needs x >= 0, got {x}")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Err(Error::Domain("li(x) diverges at x = 1".into()));
    }
    let l = x.ln();
    if l > 0.0 {
        Ok(ei_positive(l))
    } else {
        Ok(-exp_integral_e1(-l))
    }
}

/// `Ei(y)` for `y > 0`.
fn ei_positive(y: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for k in 1..2000 {
        term *= y / k as f64;
        let add = term / k as f64;
        let t = sum + add;
        comp += if sum.abs() >= add.abs() {
            (sum - t) + add
        } else {
            (add - t) + sum
        };
        sum = t;
        if add < 1e-17 * sum && k as f64 > y {
            break;
        }
    }
    EULER_GAMMA + y.ln() + (sum + comp)
}

/// Exponential integral `E₁(y)` for `y > 0`.
pub fn exp_integral_e1(y: f64) -> f64 {
    if y <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..60 {
            term *= -y / k as f64;
            let add = term / k as f64;
            sum += add;
            if add.abs() < 1e-18 {
                break;
            }
        }
        -EULER_GAMMA - y.ln() - sum
    } else {
        // modified Lentz on the continued fraction e^{-y} / (y + 1 - 1/(y + 3 - 4/(y + 5 - ...)))
        let tiny = 1e-300;
        let mut b = y + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let a = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let delta = c * d;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-y).exp()
    }
}

/// `∫_a^b li(t) dt` for `1 < a <= b` by composite 16-point Gauss–Legendre on
/// geometrically graded panels. This is the only quadrature in `arith`.
pub fn integral_of_li(a: f64, b: f64) -> Result<f64> {
    if !(a > 1.0 && b >= a) {
        return Err(Error::Domain(format!("∫li needs 1 < a <= b, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(0.0);
    }
    // panel ratio; li is analytic away from t = 1 and t = 0
    let ratio: f64 = 1.25;
    let n_panels = ((b / a).ln() / ratio.ln()).ceil().max(1.0) as usize;
    let step = (b / a).ln() / n_panels as f64;
    let mut acc = crate::summation::Neumaier::new();
    for k in 0..n_panels {
        let lo = a * (step * k as f64).exp();
        let hi = if k + 1 == n_panels {
            b
        } else {
            a * (step * (k + 1) as f64).exp()
        };
        let (mid, half) = ((lo + hi) / 2.0, (hi - lo) / 2.0);
        for (node, weight) in GAUSS_LEGENDRE_16 {
            for sign in [-1.0, 1.0] {
                acc.add(weight * half * log_integral(mid + sign * node * half)?);
            }
        }
    }
    Ok(acc.value())
}

/// Positive nodes and weights of the 16-point Gauss–Legendre rule.
pub(crate) const GAUSS_LEGENDRE_16: [(f64, f64); 8] = [
    (0.095_012_509_837_637_44, 0.189_450_610_455_068_5),
    (0.281_603_550_779_258_9, 0.182_603_415_044_923_6),
    (0.458_016_777_657_227_4, 0.169_156_519_395_002_5),
    (0.617_876_244_402_643_7, 0.149_595_988_816_576_7),
    (0.755_404_408_355_003, 0.124_628_971_255_533_9),
    (0.865_631_202_387_831_7, 0.095_158_511_682_492_78),
    (0.944_575_023_073_232_6, 0.062_253_523_938_647_89),
    (0.989_400_934_991_649_9, 0.027_152_459_411_754_09),
];
