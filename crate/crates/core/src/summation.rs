//! Compensated summation with a deterministic parallel reduction.
//!
//! Every long sum in the crate goes through [`block_sum`] (or its complex
//! twin). The index range is cut into blocks of fixed length [`BLOCK`]; each
//! block is reduced with Neumaier's algorithm, possibly on another thread, and
//! the block partials are then folded sequentially in index order. The block
//! boundaries never depend on the worker count, so the result is bit-identical
//! for any rayon pool size.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Terms per reduction block.
pub const BLOCK: usize = 1 << 13;

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Result of a compensated sum together with an a-priori rounding bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompensatedSum {
    pub value: f64,
    pub n_terms: u64,
    /// Upper bound on the accumulated rounding error, `2u|S| + 2nu²Σ|x_i|`.
    pub comp_bound: f64,
}

impl CompensatedSum {
    pub fn zero() -> Self {
        Self {
            value: 0.0,
            n_terms: 0,
            comp_bound: 0.0,
        }
    }

    /// Applies an affine map `a·S + b` and widens the bound accordingly.
    pub fn affine(self, scale: f64, offset: f64) -> Self {
        let value = scale * self.value + offset;
        Self {
            value,
            n_terms: self.n_terms,
            comp_bound: scale.abs() * self.comp_bound + 2.0 * UNIT_ROUNDOFF * value.abs(),
        }
    }
}

/// Neumaier (improved Kahan–Babuška) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
    abs_sum: f64,
    n: u64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += v.abs();
        self.n += 1;
    }

    /// Folds another accumulator into this one.
    pub fn merge(&mut self, other: &Neumaier) {
        let (n, abs_sum) = (self.n + other.n, self.abs_sum + other.abs_sum);
        self.add(other.sum);
        self.add(other.comp);
        self.n = n;
        self.abs_sum = abs_sum;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn finish(&self) -> CompensatedSum {
        let value = self.value();
        let n = self.n as f64;
        CompensatedSum {
            value,
            n_terms: self.n,
            comp_bound: 2.0 * UNIT_ROUNDOFF * value.abs() + 2.0 * n * UNIT_ROUNDOFF * UNIT_ROUNDOFF * self.abs_sum,
        }
    }
}

impl Extend<f64> for Neumaier {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for v in iter {
            self.add(v);
        }
    }
}

/// Compensated sum of `term(i)` for `i in 0..len`.
pub fn block_sum<F>(len: usize, term: F) -> CompensatedSum
where
    F: Fn(usize) -> f64 + Sync,
{
    if len <= BLOCK {
        let mut acc = Neumaier::new();
        acc.extend((0..len).map(&term));
        return acc.finish();
    }
    let n_blocks = len.div_ceil(BLOCK);
    let partials: Vec<Neumaier> = (0..n_blocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = Neumaier::new();
            acc.extend((b * BLOCK..((b + 1) * BLOCK).min(len)).map(&term));
            acc
        })
        .collect();
    let mut total = Neumaier::new();
    for p in &partials {
        total.merge(p);
    }
    total.finish()
}

/// Complex compensated sum; real and imaginary parts carry separate bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexSum {
    pub re: CompensatedSum,
    pub im: CompensatedSum,
}

impl ComplexSum {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value, self.im.value)
    }
}

pub fn block_sum_complex<F>(len: usize, term: F) -> ComplexSum
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let reduce = |range: std::ops::Range<usize>| {
        let (mut re, mut im) = (Neumaier::new(), Neumaier::new());
        for i in range {
            let z = term(i);
            re.add(z.re);
            im.add(z.im);
        }
        (re, im)
    };
    let (re, im) = if len <= BLOCK {
        reduce(0..len)
    } else {
        let partials: Vec<(Neumaier, Neumaier)> = (0..len.div_ceil(BLOCK))
            .into_par_iter()
            .map(|b| reduce(b * BLOCK..((b + 1) * BLOCK).min(len)))
            .collect();
        let (mut re, mut im) = (Neumaier::new(), Neumaier::new());
        for (r, i) in &partials {
            re.merge(r);
            im.merge(i);
        }
        (re, im)
    };
    ComplexSum {
        re: re.finish(),
        im: im.finish(),
    }
}

/// Sequential compensated sum of an iterator.
pub fn compensated<I: IntoIterator<Item = f64>>(iter: I) -> CompensatedSum {
    let mut acc = Neumaier::new();
    acc.extend(iter);
    acc.finish()
}
