//! A declarative description of a sum, evaluated over a grid of `x`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::race::{chebyshev_weight_sum, prime_only_sqrtlog, ChebyshevWeight, SqrtLogMode};
use super::screw::screw_ginf;
use super::theorem7::{theorem7_sum, Theorem7Path, Theorem7Variant};
use super::titchmarsh::titchmarsh_sum;
use super::weighted::{
    f_log, f_log_shifted, psi_half, residue_sum, riesz_q, riesz_q_lognorm, riesz_shifted, riesz_sum, ResidueKind,
};
use super::{lambda_sum, Boundary, Restriction};
use crate::arith::{divisor_count_table, MangoldtTable};
use crate::characters::{character_group, chi4, DirichletCharacter};
use crate::error::{Error, Result};
use crate::summation::CompensatedSum;

macro_rules! sum_kinds {
    ($($variant:ident => $name:literal),* $(,)?) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
        #[serde(rename_all = "snake_case")]
        pub enum SumKind { $($variant),* }

        impl SumKind {
            pub const ALL: &'static [SumKind] = &[$(SumKind::$variant),*];

            pub fn name(self) -> &'static str {
                match self { $(SumKind::$variant => $name),* }
            }
        }

        impl FromStr for SumKind {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(SumKind::$variant),)*
                    other => Err(Error::Domain(format!("unknown sum kind {other:?}"))),
                }
            }
        }
    };
}

sum_kinds! {
    PsiHalf => "psi_half",
    FLog => "f_log",
    Riesz => "riesz",
    FLogShifted => "f_log_shifted",
    RieszShifted => "riesz_shifted",
    FChi => "f_chi",
    RieszChi => "riesz_chi",
    PrimeOnlySqrtlog => "prime_only_sqrtlog",
    ChebExp => "cheb_exp",
    ChebExpLogp => "cheb_exp_logp",
    SqrtRace => "sqrt_race",
    ResidueFq => "residue_f_q",
    ResidueCapitalFq => "residue_F_q",
    RieszQ => "riesz_q",
    RieszQLognorm => "riesz_q_lognorm",
    ScrewG0 => "screw_g0",
    ScrewGinf => "screw_ginf",
    ScrewTotal => "screw_total",
    Thm7Bruteforce => "thm7_bruteforce",
    Thm7Fast => "thm7_fast",
    Titchmarsh => "titchmarsh",
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sum together with its parameters.
///
/// `modulus` is the character modulus (`f_chi`, `riesz_chi`, `psi_half`),
/// the residue modulus `q` (`residue_*`, `riesz_q*`) or the bound `Q`
/// (`thm7_*`, defaulting to `⌈x⌉`). For the screw kinds the grid variable is `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumSpec {
    pub kind: SumKind,
    pub modulus: Option<u64>,
    /// Character exponent vector mod `modulus`; defaults to `χ₄`.
    pub character: Option<Vec<u32>>,
    /// Residue class `a` for `psi_half` restricted to `n ≡ a (mod q)`.
    pub residue: Option<u64>,
    pub primed: bool,
    /// Upper limit `xe²`: `riesz_q*`, `prime_only_sqrtlog`, and `Eq127` for `thm7_*`.
    pub shift_e2: bool,
}

impl SumSpec {
    pub fn new(kind: SumKind) -> Self {
        Self {
            kind,
            modulus: None,
            character: None,
            residue: None,
            primed: kind == SumKind::PsiHalf,
            shift_e2: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        use SumKind::*;
        let primed_ok = matches!(self.kind, PsiHalf | FLogShifted | RieszShifted | RieszQ | RieszQLognorm);
        if self.primed && !primed_ok {
            return Err(Error::Domain(format!("{} has no primed form", self.kind)));
        }
        if self.kind == PsiHalf && !self.primed {
            return Err(Error::Domain("psi_half is primed by definition".into()));
        }
        let shift_ok = matches!(
            self.kind,
            RieszQ | RieszQLognorm | PrimeOnlySqrtlog | Thm7Bruteforce | Thm7Fast
        );
        if self.shift_e2 && !shift_ok {
            return Err(Error::Domain(format!("{} has no xe² shift", self.kind)));
        }
        if matches!(self.kind, ResidueFq | ResidueCapitalFq | RieszQ | RieszQLognorm) && self.modulus.is_none() {
            return Err(Error::Domain(format!("{} needs a modulus", self.kind)));
        }
        if self.residue.is_some() && (self.kind != PsiHalf || self.modulus.is_none()) {
            return Err(Error::Domain("a residue class needs psi_half and a modulus".into()));
        }
        Ok(())
    }

    /// Sieve limit needed to evaluate this spec at every grid point up to `x_max`.
    pub fn required_limit(&self, x_max: f64) -> u64 {
        use SumKind::*;
        let e2 = std::f64::consts::E.powi(2);
        let need = match self.kind {
            ScrewG0 | ScrewTotal => x_max.abs().exp(),
            ScrewGinf => 2.0,
            FLogShifted | RieszShifted => x_max * e2,
            ChebExp | ChebExpLogp => super::race::EXP_CUTOFF * x_max,
            _ if self.shift_e2 => x_max * e2,
            _ => x_max,
        };
        need.ceil().max(2.0) as u64
    }

    fn boundary(&self) -> Boundary {
        if self.primed {
            Boundary::Primed
        } else {
            Boundary::Full
        }
    }

    fn character(&self) -> Result<DirichletCharacter> {
        match (self.modulus, &self.character) {
            (None, None) | (Some(4), None) => Ok(chi4()),
            (Some(q), Some(e)) => {
                let g = character_group(q)?;
                let i = g
                    .position(e)
                    .ok_or_else(|| Error::Domain(format!("no character mod {q} with exponents {e:?}")))?;
                Ok(g.characters()[i].clone())
            }
            (Some(q), None) => Err(Error::Domain(format!("character mod {q} needs an exponent vector"))),
            (None, Some(_)) => Err(Error::Domain("character exponents need a modulus".into())),
        }
    }

    fn restriction(&self) -> Result<Restriction> {
        Ok(match (self.modulus, self.residue, &self.character) {
            (Some(q), Some(a), _) => Restriction::Residue { q, a },
            (_, _, Some(_)) | (Some(_), None, None) => Restriction::Character(self.character()?),
            _ => Restriction::All,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SumSample {
    pub x: f64,
    pub value: f64,
    pub n_terms: u64,
    pub comp_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SumSeries {
    pub spec: SumSpec,
    pub samples: Vec<SumSample>,
}

fn sample(x: f64, s: CompensatedSum) -> SumSample {
    SumSample {
        x,
        value: s.value,
        n_terms: s.n_terms,
        comp_bound: s.comp_bound,
    }
}

fn evaluate_with(spec: &SumSpec, x: f64, table: &MangoldtTable, divisors: Option<&[u32]>) -> Result<SumSample> {
    use SumKind::*;
    spec.validate()?;
    let s = match spec.kind {
        PsiHalf => psi_half(x, table, &spec.restriction()?)?,
        FLog => f_log(x, table, &spec.restriction()?)?,
        Riesz => riesz_sum(x, table)?,
        FLogShifted => f_log_shifted(x, table, &spec.restriction()?, spec.boundary())?,
        RieszShifted => riesz_shifted(x, table, spec.boundary())?,
        FChi => f_log(x, table, &Restriction::Character(spec.character()?))?,
        RieszChi => super::weighted::riesz_chi(x, table, &spec.character()?)?,
        PrimeOnlySqrtlog => {
            let mode = if spec.shift_e2 {
                SqrtLogMode::ShiftedTrivial
            } else {
                SqrtLogMode::Chi4
            };
            prime_only_sqrtlog(x, table, mode)?
        }
        ChebExp => chebyshev_weight_sum(x, table, ChebyshevWeight::Exp)?,
        ChebExpLogp => chebyshev_weight_sum(x, table, ChebyshevWeight::ExpLogp)?,
        SqrtRace => chebyshev_weight_sum(x, table, ChebyshevWeight::SqrtRace)?,
        ResidueFq => residue_sum(x, spec.modulus.unwrap_or(1), table, ResidueKind::Fq)?,
        ResidueCapitalFq => residue_sum(x, spec.modulus.unwrap_or(1), table, ResidueKind::CapitalFq)?,
        RieszQ => riesz_q(x, spec.modulus.unwrap_or(1), table, spec.shift_e2, spec.boundary())?,
        RieszQLognorm => riesz_q_lognorm(x, spec.modulus.unwrap_or(1), table, spec.shift_e2, spec.boundary())?,
        ScrewG0 | ScrewTotal => {
            let u = x.abs().exp();
            let f = f_log(u, table, &Restriction::All)?;
            let g0 = f.affine(1.0, -4.0 * (u.sqrt() + 1.0 / u.sqrt() - 2.0));
            if spec.kind == ScrewG0 {
                g0
            } else {
                g0.affine(1.0, screw_ginf(x)?)
            }
        }
        ScrewGinf => CompensatedSum {
            value: screw_ginf(x)?,
            n_terms: 0,
            comp_bound: 0.0,
        },
        Thm7Bruteforce | Thm7Fast => {
            let path = if spec.kind == Thm7Fast {
                Theorem7Path::Fast
            } else {
                Theorem7Path::Bruteforce
            };
            let variant = if spec.shift_e2 {
                Theorem7Variant::Eq127
            } else {
                Theorem7Variant::Eq126
            };
            let q_max = spec.modulus.unwrap_or(x.ceil() as u64);
            theorem7_sum(x, q_max, table, path, variant)?
        }
        Titchmarsh => {
            let owned;
            let d = match divisors {
                Some(d) => d,
                None => {
                    owned = divisor_count_table(x.floor() as u64)?;
                    &owned
                }
            };
            let r = titchmarsh_sum(x, table, d)?;
            let n_terms = lambda_sum(table, x, Boundary::Full, &Restriction::All, |_| 0.0)?.n_terms;
            CompensatedSum {
                value: r.sum,
                n_terms,
                comp_bound: 2.0 * f64::EPSILON * r.sum.abs() * (n_terms as f64).max(1.0).sqrt(),
            }
        }
    };
    Ok(sample(x, s))
}

/// Evaluates `spec` at a single point.
pub fn evaluate(spec: &SumSpec, x: f64, table: &MangoldtTable) -> Result<SumSample> {
    evaluate_with(spec, x, table, None)
}

/// Evaluates `spec` on a strictly increasing grid, in parallel across points.
pub fn evaluate_series(spec: &SumSpec, xs: &[f64], table: &MangoldtTable) -> Result<SumSeries> {
    spec.validate()?;
    if xs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("grid must be strictly increasing".into()));
    }
    let divisors = match (spec.kind, xs.last()) {
        (SumKind::Titchmarsh, Some(&x)) => Some(divisor_count_table(x.floor() as u64)?),
        _ => None,
    };
    let samples = xs
        .par_iter()
        .map(|&x| evaluate_with(spec, x, table, divisors.as_deref()))
        .collect::<Result<Vec<_>>>()?;
    Ok(SumSeries {
        spec: spec.clone(),
        samples,
    })
}
