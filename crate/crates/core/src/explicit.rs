//! Truncated explicit formulas over nontrivial zeros, assembled term by term
//! and compared with the direct prime-power sums they describe.
//!
//! Every evaluation assumes RH (or GRH) in the sense that zeros are stored
//! as ordinates on the critical line.

use std::f64::consts::E;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::MangoldtTable;
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::specials::{l_logderiv, l_logderiv_prime, zeta_logderiv, zeta_logderiv_prime};
use crate::summation::{CompensatedSum, ComplexSum};
use crate::sums::{f_log, lambda_sum_complex, psi_half, riesz_shifted, Boundary, Restriction};
use crate::zeros::{zero_sum, zero_sum_at, Truncation, ZeroLabel, ZeroSet};

const HALF: Complex64 = Complex64::new(0.5, 0.0);

/// Where an oracle is evaluated relative to the jumps of the direct sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// Move `x` to `⌊x⌋ + 1/2`, away from every prime power.
    #[default]
    OffPrimePower,
    /// Use `x` as given; a prime-power `x` takes the half-weight boundary term.
    Strict,
}

impl Placement {
    pub fn place(self, x: f64) -> f64 {
        match self {
            Placement::OffPrimePower => x.floor() + 0.5,
            Placement::Strict => x,
        }
    }
}

/// One truncated explicit formula at one `x`.
///
/// The right-hand side is `main_term + constant_part + zero_part + trivial_tail`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExplicitEval {
    pub x: f64,
    pub s: (f64, f64),
    /// Largest `|γ|` summed.
    pub truncation: f64,
    pub n_zeros: u64,
    pub zero_part: (f64, f64),
    /// Estimated size of the omitted zeros, see [`crate::zeros::ZeroSum::tail`].
    pub zero_tail: f64,
    pub trivial_tail: (f64, f64),
    pub constant_part: (f64, f64),
    pub main_term: (f64, f64),
    pub direct: (f64, f64),
    /// Prime-power terms in the direct sum.
    pub direct_terms: u64,
    /// Compensation bound of the direct sum.
    pub direct_comp_bound: f64,
    pub residual: f64,
}

fn pair(z: Complex64) -> (f64, f64) {
    (z.re, z.im)
}

fn cplx(p: (f64, f64)) -> Complex64 {
    Complex64::new(p.0, p.1)
}

impl ExplicitEval {
    pub fn rhs(&self) -> Complex64 {
        cplx(self.main_term) + cplx(self.constant_part) + cplx(self.zero_part) + cplx(self.trivial_tail)
    }

    pub fn direct_value(&self) -> Complex64 {
        cplx(self.direct)
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        x: f64,
        s: Complex64,
        zeros: crate::zeros::ZeroSum,
        zero_part: Complex64,
        trivial_tail: Complex64,
        constant_part: Complex64,
        main_term: Complex64,
        direct: ComplexSum,
    ) -> Self {
        let (direct_terms, direct_comp_bound) = (direct.re.n_terms, direct.re.comp_bound.max(direct.im.comp_bound));
        let direct = direct.value();
        let rhs = main_term + constant_part + zero_part + trivial_tail;
        Self {
            x,
            s: pair(s),
            truncation: zeros.height,
            n_zeros: zeros.n_terms,
            zero_part: pair(zero_part),
            zero_tail: zeros.tail,
            trivial_tail: pair(trivial_tail),
            constant_part: pair(constant_part),
            main_term: pair(main_term),
            direct: pair(direct),
            direct_terms,
            direct_comp_bound,
            residual: (direct - rhs).norm(),
        }
    }
}

/// `Σ_{k≥k0} x^{−2k−a}/(2k+a)^power`, summed until the geometric remainder
/// drops below `1e−17`.
pub fn trivial_zero_tail(x: f64, a: Complex64, k0: u32, power: i32) -> Result<Complex64> {
    if !(x > 1.0) {
        return Err(Error::Domain(format!("trivial-zero tail needs x > 1, got {x}")));
    }
    let first = 2.0 * k0 as f64;
    if a.im == 0.0 && a.re <= -first && a.re.fract() == 0.0 && (a.re as i64) % 2 == 0 {
        return Err(Error::Pole {
            function: "trivial-zero tail",
            s: a.to_string(),
        });
    }
    let ratio = x.powi(-2);
    let lx = x.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    // terms decay once 2k + Re a is positive; stop on the remainder bound after that
    for k in k0..k0 + 50_000_000 {
        let e = 2.0 * k as f64 + a;
        let t = (-e * lx).exp() / e.powi(power);
        sum += t;
        if e.re > 0.0 && t.norm() * ratio / (1.0 - ratio) < 1e-17 {
            return Ok(sum);
        }
    }
    Err(Error::Domain(format!("trivial-zero tail did not converge at x = {x}")))
}

fn expect_label(zeros: &ZeroSet, chi: Option<&DirichletCharacter>) -> Result<()> {
    let ok = match (zeros.label(), chi) {
        (ZeroLabel::Zeta, None) => true,
        (ZeroLabel::Dirichlet { modulus, exponents }, Some(c)) => {
            *modulus == c.modulus() && exponents.as_slice() == c.exponent_vector()
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "zero set {} does not belong to the requested function",
            zeros.label()
        )))
    }
}

fn primitive_nonprincipal(chi: &DirichletCharacter) -> Result<()> {
    if chi.is_principal() || !chi.is_primitive() {
        return Err(Error::Domain(format!(
            "explicit formulas need a primitive non-principal character; induce first (modulus {}, conductor {})",
            chi.modulus(),
            chi.conductor()
        )));
    }
    Ok(())
}

fn need_x(x: f64, min: f64) -> Result<()> {
    if x > min || (min == 2.0 && x >= 2.0) {
        Ok(())
    } else {
        Err(Error::Domain(format!("explicit formula needs x > {min}, got {x}")))
    }
}

/// `Σ'_{n≤x} Λ(n)/n^s = x^{1−s}/(1−s) − ζ'/ζ(s) − Σ_ρ x^{ρ−s}/(ρ−s) + Σ_{k≥1} x^{−2k−s}/(2k+s)`.
pub fn explicit_rhs_zeta(
    x: f64,
    s: Complex64,
    truncation: Truncation,
    zeros: &ZeroSet,
    table: &MangoldtTable,
    placement: Placement,
) -> Result<ExplicitEval> {
    let x = placement.place(x);
    need_x(x, 1.0)?;
    expect_label(zeros, None)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "zeta",
            s: s.to_string(),
        });
    }
    let lx = x.ln();
    let one_minus = 1.0 - s;
    let main = (one_minus * lx).exp() / one_minus;
    let constant = -zeta_logderiv(s)?;
    let zs = zero_sum_at(x, zeros, s, truncation)?;
    let tail = trivial_zero_tail(x, s, 1, 1)?;
    let direct = lambda_sum_complex(table, x, Boundary::Primed, None, |t| (-s * t.ln_n).exp())?;
    Ok(ExplicitEval::assemble(
        x,
        s,
        zs,
        -Complex64::new(zs.value, zs.imag),
        tail,
        constant,
        main,
        direct,
    ))
}

/// `Σ'_{n≤x} Λ(n)χ(n)/n^s = −L'/L(s, χ) − Σ_ρ x^{ρ−s}/(ρ−s) + Σ_{k≥0} x^{−2k−κ−s}/(2k+κ+s)`
/// for primitive non-principal `χ`.
pub fn explicit_rhs_l(
    x: f64,
    s: Complex64,
    chi: &DirichletCharacter,
    truncation: Truncation,
    zeros: &ZeroSet,
    table: &MangoldtTable,
    placement: Placement,
) -> Result<ExplicitEval> {
    let x = placement.place(x);
    need_x(x, 1.0)?;
    primitive_nonprincipal(chi)?;
    expect_label(zeros, Some(chi))?;
    let kappa = chi.kappa() as f64;
    let constant = -l_logderiv(s, chi)?;
    let zs = zero_sum_at(x, zeros, s, truncation)?;
    let tail = trivial_zero_tail(x, s + kappa, 0, 1)?;
    let direct = lambda_sum_complex(table, x, Boundary::Primed, Some(chi), |t| (-s * t.ln_n).exp())?;
    Ok(ExplicitEval::assemble(
        x,
        s,
        zs,
        -Complex64::new(zs.value, zs.imag),
        tail,
        constant,
        Complex64::new(0.0, 0.0),
        direct,
    ))
}

/// `2√x = ψ_{1/2}(x) + Σ_ρ x^{ρ−1/2}/(ρ−1/2) + ζ'/ζ(1/2) − Σ_{k≥1} x^{−2k−1/2}/(2k+1/2)`,
/// the `s = 1/2` case of [`explicit_rhs_zeta`].
pub fn eq307_oracle(
    x: f64,
    truncation: Truncation,
    zeros: &ZeroSet,
    table: &MangoldtTable,
    placement: Placement,
) -> Result<ExplicitEval> {
    explicit_rhs_zeta(x, HALF, truncation, zeros, table, placement)
}

/// `f(x) = 4√x − ζ'/ζ(1/2) log x − (ζ'/ζ)'(1/2) − Σ_ρ x^{ρ−1/2}/(ρ−1/2)² − Σ_{k≥1} x^{−2k−1/2}/(2k+1/2)²`
/// with `f(x) = Σ_{n≤x} Λ(n)/√n log(x/n)`.
pub fn eq301_oracle(
    x: f64,
    truncation: Truncation,
    zeros: &ZeroSet,
    table: &MangoldtTable,
    placement: Placement,
) -> Result<ExplicitEval> {
    let x = placement.place(x);
    need_x(x, 2.0)?;
    expect_label(zeros, None)?;
    let lx = x.ln();
    let d1 = zeta_logderiv(HALF)?;
    let d2 = zeta_logderiv_prime(HALF)?;
    let zs = zero_sum(x, zeros, 2, truncation)?;
    let tail = trivial_zero_tail(x, HALF, 1, 2)?;
    let f = f_log(x, table, &Restriction::All)?;
    let direct = ComplexSum {
        re: f,
        im: CompensatedSum {
            value: 0.0,
            n_terms: f.n_terms,
            comp_bound: 0.0,
        },
    };
    Ok(ExplicitEval::assemble(
        x,
        HALF,
        zs,
        -Complex64::new(zs.value, zs.imag),
        -tail,
        -d1 * lx - d2,
        Complex64::new(4.0 * x.sqrt(), 0.0),
        direct,
    ))
}

/// `f_χ(x) = −L'/L(1/2) log x − (L'/L)'(1/2) − Σ_ρ x^{ρ−1/2}/(ρ−1/2)² − Σ_{k≥0} x^{−2k−κ−1/2}/(2k+κ+1/2)²`
/// for primitive non-principal `χ`; complex when `χ` is.
pub fn eq405_oracle(
    x: f64,
    chi: &DirichletCharacter,
    truncation: Truncation,
    zeros: &ZeroSet,
    table: &MangoldtTable,
    placement: Placement,
) -> Result<ExplicitEval> {
    let x = placement.place(x);
    need_x(x, 2.0)?;
    primitive_nonprincipal(chi)?;
    expect_label(zeros, Some(chi))?;
    let lx = x.ln();
    let d1 = l_logderiv(HALF, chi)?;
    let d2 = l_logderiv_prime(HALF, chi)?;
    let zs = zero_sum(x, zeros, 2, truncation)?;
    let tail = trivial_zero_tail(x, HALF + chi.kappa() as f64, 0, 2)?;
    let direct = lambda_sum_complex(table, x, Boundary::Full, Some(chi), |t| {
        Complex64::new((lx - t.ln_n) / (t.n as f64).sqrt(), 0.0)
    })?;
    Ok(ExplicitEval::assemble(
        x,
        HALF,
        zs,
        -Complex64::new(zs.value, zs.imag),
        -tail,
        -d1 * lx - d2,
        Complex64::new(0.0, 0.0),
        direct,
    ))
}

/// The combination `f(x) − 2ψ_{1/2}(x)`, assembled in two ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eq308Check {
    pub x: f64,
    pub direct: f64,
    /// `−ζ'/ζ log x + 2S₁ − S₂ − (ζ'/ζ)' + 2ζ'/ζ − T₂ − 2T₁` from fresh zero sums.
    pub rhs: f64,
    /// The right-hand side of the power-2 oracle minus twice that of the `s = 1/2` oracle.
    pub rhs_from_oracles: f64,
    pub residual: f64,
    /// `|rhs − rhs_from_oracles|`, zero up to rounding.
    pub algebraic_gap: f64,
}

pub fn eq308_check(
    x: f64,
    truncation: Truncation,
    zeros: &ZeroSet,
    table: &MangoldtTable,
    placement: Placement,
) -> Result<Eq308Check> {
    let x = placement.place(x);
    need_x(x, 2.0)?;
    let a = eq301_oracle(x, truncation, zeros, table, Placement::Strict)?;
    let b = eq307_oracle(x, truncation, zeros, table, Placement::Strict)?;
    let lx = x.ln();
    let d1 = zeta_logderiv(HALF)?.re;
    let d2 = zeta_logderiv_prime(HALF)?.re;
    let s1 = zero_sum(x, zeros, 1, truncation)?.value;
    let s2 = zero_sum(x, zeros, 2, truncation)?.value;
    let t1 = trivial_zero_tail(x, HALF, 1, 1)?.re;
    let t2 = trivial_zero_tail(x, HALF, 1, 2)?.re;
    let rhs = -d1 * lx + 2.0 * s1 - s2 - d2 + 2.0 * d1 - t2 - 2.0 * t1;
    let rhs_from_oracles = (a.rhs() - 2.0 * b.rhs()).re;
    let direct = f_log(x, table, &Restriction::All)?.value - 2.0 * psi_half(x, table, &Restriction::All)?.value;
    Ok(Eq308Check {
        x,
        direct,
        rhs,
        rhs_from_oracles,
        residual: (direct - rhs).abs(),
        algebraic_gap: (rhs - rhs_from_oracles).abs(),
    })
}

/// The shifted Riesz sum `Σ_{n≤xe²} Λ(n)/√n (1 − log n/log x)` against its
/// zero-sum expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eq309Decomposition {
    pub x: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    /// `−ζ'/ζ(1/2)`, the limit under RH.
    pub target: f64,
    /// `(2/log x) Σ_ρ (xe²)^{ρ−1/2}/(ρ−1/2)`, whose decay is the content of the
    /// equivalence.
    pub oscillating: f64,
    /// `−(1/log x) Σ_ρ (xe²)^{ρ−1/2}/(ρ−1/2)²`, bounded over `log x`.
    pub power2_term: f64,
    /// `−((ζ'/ζ)'(1/2) + trivial tails)/log x`, the exact form of the `O(1/log x)`.
    pub remainder: f64,
}

pub fn eq309_decomposition(
    x: f64,
    truncation: Truncation,
    zeros: &ZeroSet,
    table: &MangoldtTable,
) -> Result<Eq309Decomposition> {
    need_x(x, 2.0)?;
    expect_label(zeros, None)?;
    let y = x * E * E;
    let lx = x.ln();
    let d1 = zeta_logderiv(HALF)?.re;
    let d2 = zeta_logderiv_prime(HALF)?.re;
    let s1 = zero_sum(y, zeros, 1, truncation)?.value;
    let s2 = zero_sum(y, zeros, 2, truncation)?.value;
    let t1 = trivial_zero_tail(y, HALF, 1, 1)?.re;
    let t2 = trivial_zero_tail(y, HALF, 1, 2)?.re;
    let lhs = riesz_shifted(x, table, Boundary::Full)?.value;
    let oscillating = 2.0 * s1 / lx;
    let power2_term = -s2 / lx;
    let remainder = -(d2 + t2 + 2.0 * t1) / lx;
    let rhs = -d1 + oscillating + power2_term + remainder;
    Ok(Eq309Decomposition {
        x,
        lhs,
        rhs,
        residual: (lhs - rhs).abs(),
        target: -d1,
        oscillating,
        power2_term,
        remainder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{character_group, chi4};
    use crate::zeros::{bundled_chi4_zeros, bundled_zeta_zeros};

    #[test]
    fn trivial_tail_at_ten() {
        let t = trivial_zero_tail(10.0, HALF, 1, 1).unwrap();
        // the fourth term is still 3.7e−10, so eight are summed by hand
        let hand: f64 = (1..=8)
            .map(|k| 10f64.powf(-2.0 * k as f64 - 0.5) / (2.0 * k as f64 + 0.5))
            .sum();
        assert!((t.re - hand).abs() < 1e-14, "{} vs {hand}", t.re);
        assert_eq!(t.im, 0.0);
    }

    #[test]
    fn kappa_enters_tail() {
        // k = 0 with κ = 1: x^{−3/2}/(3/2) leads
        let x = 50.0;
        let t = trivial_zero_tail(x, HALF + 1.0, 0, 1).unwrap().re;
        let lead = x.powf(-1.5) / 1.5;
        assert!((t - lead).abs() < lead * x.powi(-2));
    }

    #[test]
    fn tail_pole() {
        assert!(matches!(
            trivial_zero_tail(3.0, Complex64::new(-4.0, 0.0), 1, 1),
            Err(Error::Pole { .. })
        ));
        assert!(trivial_zero_tail(3.0, Complex64::new(-3.0, 0.0), 1, 1).is_ok());
    }

    #[test]
    fn psi_from_zeros() {
        let table = MangoldtTable::build(10_000).unwrap();
        let z = bundled_zeta_zeros();
        let e = explicit_rhs_zeta(
            1000.0,
            Complex64::new(0.0, 0.0),
            Truncation::All,
            &z,
            &table,
            Placement::default(),
        )
        .unwrap();
        assert_eq!(e.x, 1000.5);
        // ζ'/ζ(0) = log 2π
        assert!((e.constant_part.0 + (2.0 * std::f64::consts::PI).ln()).abs() < 1e-10);
        // each term is about √x times its s = 1/2 counterpart, and so is the truncation error
        assert!(e.residual < e.zero_tail, "{e:?}");
        let h = eq307_oracle(1000.0, Truncation::All, &z, &table, Placement::default()).unwrap();
        assert!(e.residual < 2.0 * 1000f64.sqrt() * h.residual, "{e:?} {h:?}");
    }

    #[test]
    fn conjugate_symmetry() {
        let table = MangoldtTable::build(10_000).unwrap();
        let z = bundled_zeta_zeros();
        let s = Complex64::new(0.3, 2.0);
        let a = explicit_rhs_zeta(500.0, s, Truncation::Count(500), &z, &table, Placement::default()).unwrap();
        let b = explicit_rhs_zeta(
            500.0,
            s.conj(),
            Truncation::Count(500),
            &z,
            &table,
            Placement::default(),
        )
        .unwrap();
        assert!((a.rhs() - b.rhs().conj()).norm() < 1e-9);
        assert!((a.direct_value() - b.direct_value().conj()).norm() < 1e-12);
    }

    #[test]
    fn strict_placement_uses_half_weight() {
        let table = MangoldtTable::build(1000).unwrap();
        let z = bundled_zeta_zeros();
        let e = eq307_oracle(97.0, Truncation::All, &z, &table, Placement::Strict).unwrap();
        let below = psi_half(96.5, &table, &Restriction::All).unwrap().value;
        assert!((e.direct.0 - below - 0.5 * 97f64.ln() / 97f64.sqrt()).abs() < 1e-12);
        // the truncated formula lands on the midpoint of the jump
        assert!(e.residual < 0.05, "{e:?}");
    }

    #[test]
    fn chi4_oracles() {
        let table = MangoldtTable::build(100_000).unwrap();
        let z = bundled_chi4_zeros();
        let chi = chi4();
        let x = 10f64.powf(3.5);
        let e = explicit_rhs_l(
            x,
            HALF,
            &chi,
            Truncation::Height(500.0),
            &z,
            &table,
            Placement::default(),
        )
        .unwrap();
        // 3163 ≡ 3 (mod 4) is prime and lies within x/T of 3162.5, so the
        // truncated formula sits near the midpoint of its jump
        let jump = -(3163f64.ln()) / 3163f64.sqrt();
        assert!(((e.rhs() - e.direct_value()).re - jump / 2.0).abs() < 0.05, "{e:?}");
        let away = explicit_rhs_l(
            1000.0,
            HALF,
            &chi,
            Truncation::Height(500.0),
            &z,
            &table,
            Placement::default(),
        )
        .unwrap();
        assert!(away.residual < 0.05, "{away:?}");
        let f = eq405_oracle(1000.0, &chi, Truncation::All, &z, &table, Placement::default()).unwrap();
        assert!(f.residual < 0.02, "{f:?}");
    }

    #[test]
    fn imprimitive_mod8_adds_nothing_at_two() {
        let table = MangoldtTable::build(10_000).unwrap();
        let g = character_group(8).unwrap();
        let star = chi4();
        let chi = g
            .characters()
            .iter()
            .find(|c| c.conductor() == 4)
            .expect("mod 8 has a conductor-4 character");
        let weight = |t: crate::sums::Term| Complex64::new(1.0 / (t.n as f64).sqrt(), 0.0);
        let a = lambda_sum_complex(&table, 5000.5, Boundary::Primed, Some(chi), weight)
            .unwrap()
            .value();
        let b = lambda_sum_complex(&table, 5000.5, Boundary::Primed, Some(&star), weight)
            .unwrap()
            .value();
        assert_eq!(a, b);
        let z = bundled_chi4_zeros();
        assert!(explicit_rhs_l(100.0, HALF, chi, Truncation::All, &z, &table, Placement::default()).is_err());
    }

    #[test]
    fn log_weighted_identity_is_an_algebraic_combination() {
        let table = MangoldtTable::build(100_000).unwrap();
        let z = bundled_zeta_zeros();
        for x in [150.0, 5000.0, 60_000.0] {
            let c = eq308_check(x, Truncation::All, &z, &table, Placement::default()).unwrap();
            assert!(c.algebraic_gap < 1e-9, "{c:?}");
        }
    }

    #[test]
    fn riesz_decomposition_matches_and_power2_term_decays() {
        let table = MangoldtTable::build(10_000_000).unwrap();
        let z = bundled_zeta_zeros();
        let d = eq309_decomposition(1e4, Truncation::All, &z, &table).unwrap();
        assert!(d.residual < 0.05, "{d:?}");
        let lo = eq309_decomposition(1e3, Truncation::All, &z, &table).unwrap();
        let hi = eq309_decomposition(1e6, Truncation::All, &z, &table).unwrap();
        let bound = |x: f64| 2.0 * z.ordinates().iter().map(|g| 1.0 / (g * g)).sum::<f64>() / x.ln();
        assert!(lo.power2_term.abs() <= bound(1e3) && hi.power2_term.abs() <= bound(1e6));
        assert!(bound(1e6) < bound(1e3));
        let regrouped = d.lhs - d.target - d.oscillating - d.power2_term;
        assert!((regrouped - d.remainder).abs() < 0.05);
    }

    #[test]
    fn wrong_zero_set_rejected() {
        let table = MangoldtTable::build(1000).unwrap();
        let z = bundled_chi4_zeros();
        assert!(eq301_oracle(100.0, Truncation::All, &z, &table, Placement::default()).is_err());
    }
}
