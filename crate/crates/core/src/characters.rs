//! Dirichlet characters with exact root-of-unity values.
//!
//! The unit group `(ℤ/q)*` is split by CRT into cyclic factors: one per odd
//! prime power (generated by a primitive root), and for `2^e` the factor `{±1}`
//! when `e ≥ 2` plus `⟨5⟩` when `e ≥ 3`. A character is an exponent vector
//! over these generators, listed in ascending prime order with the 2-part
//! first. `χ(n)` is stored as an index `k` meaning `e^{2πik/order}`.

use std::f64::consts::PI;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::summation::Neumaier;

/// Largest supported modulus.
pub const MAX_MODULUS: u64 = 1_000_000;

/// Marks residues not coprime to the modulus in a value table.
pub const NON_UNIT: u32 = u32::MAX;

#[derive(Debug)]
struct PrimePower {
    p: u64,
    pe: u64,
}

#[derive(Debug)]
struct Generator {
    /// Index into `GroupData::prime_powers`.
    component: usize,
    order: u64,
    /// Discrete logarithm of each residue mod `p^e`; `NON_UNIT` for multiples of `p`.
    dlog: Vec<u32>,
}

#[derive(Debug)]
struct GroupData {
    q: u64,
    prime_powers: Vec<PrimePower>,
    generators: Vec<Generator>,
}

impl GroupData {
    fn new(q: u64) -> Self {
        let prime_powers = factor(q)
            .into_iter()
            .map(|(p, e)| PrimePower { p, pe: p.pow(e) })
            .collect::<Vec<_>>();
        let mut generators = Vec::new();
        for (c, pp) in prime_powers.iter().enumerate() {
            if pp.p == 2 {
                generators.extend(two_power_generators(c, pp.pe));
            } else {
                generators.push(odd_generator(c, pp.p, pp.pe));
            }
        }
        Self {
            q,
            prime_powers,
            generators,
        }
    }

    /// Discrete-log coordinates of `n`, or `None` when `gcd(n, q) > 1`.
    fn coordinates(&self, n: u64, out: &mut Vec<u32>) -> bool {
        out.clear();
        for pp in &self.prime_powers {
            if n.is_multiple_of(pp.p) {
                return false;
            }
        }
        for g in &self.generators {
            let r = n % self.prime_powers[g.component].pe;
            out.push(g.dlog[r as usize]);
        }
        true
    }
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let fs = factor(phi);
    (2..p)
        .find(|&g| fs.iter().all(|&(f, _)| pow_mod(g, phi / f, p) != 1))
        .unwrap_or(1)
}

fn odd_generator(component: usize, p: u64, pe: u64) -> Generator {
    let mut g = primitive_root(p);
    if pe > p && pow_mod(g, p - 1, p * p) == 1 {
        g += p;
    }
    let order = pe / p * (p - 1);
    let mut dlog = vec![NON_UNIT; pe as usize];
    let mut r = 1u64;
    for k in 0..order {
        dlog[r as usize] = k as u32;
        r = r * g % pe;
    }
    Generator { component, order, dlog }
}

fn two_power_generators(component: usize, pe: u64) -> Vec<Generator> {
    if pe == 2 {
        return Vec::new();
    }
    let sign = Generator {
        component,
        order: 2,
        dlog: (0..pe)
            .map(|r| match r % 4 {
                1 => 0,
                3 => 1,
                _ => NON_UNIT,
            })
            .collect(),
    };
    if pe == 4 {
        return vec![sign];
    }
    let order = pe / 4;
    let mut dlog = vec![NON_UNIT; pe as usize];
    let mut r = 1u64;
    for k in 0..order {
        dlog[r as usize] = k as u32;
        dlog[(pe - r) as usize] = k as u32;
        r = r * 5 % pe;
    }
    vec![sign, Generator { component, order, dlog }]
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `e^{2πik/order}` with quarter turns snapped to exact values.
pub fn root_of_unity(k: u32, order: u32) -> Complex64 {
    let (k, order) = (k as u64 % order as u64, order as u64);
    if (4 * k) % order == 0 {
        return match 4 * k / order {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // reflect the lower half so that conjugate indices give bit-exact conjugates
    if 2 * k > order {
        return Complex64::from_polar(1.0, 2.0 * PI * (order - k) as f64 / order as f64).conj();
    }
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / order as f64)
}

/// A Dirichlet character modulo `q`.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<GroupData>,
    exponents: Vec<u32>,
    order: u32,
    /// Multiplier turning a discrete log into an index over `order`.
    scale: Vec<u64>,
    conductor: u64,
    kappa: u8,
    values: OnceLock<Arc<Vec<u32>>>,
}

impl DirichletCharacter {
    fn new(group: Arc<GroupData>, exponents: Vec<u32>) -> Self {
        let mut order = 1u64;
        for (g, &e) in group.generators.iter().zip(&exponents) {
            let o = g.order / gcd(g.order, e as u64);
            order = order / gcd(order, o) * o;
        }
        let scale = group
            .generators
            .iter()
            .zip(&exponents)
            .map(|(g, &e)| e as u64 * order / g.order)
            .collect();
        let mut chi = Self {
            group,
            exponents,
            order: order as u32,
            scale,
            conductor: 0,
            kappa: 0,
            values: OnceLock::new(),
        };
        chi.conductor = chi.find_conductor();
        let q = chi.modulus();
        chi.kappa = match chi.index(q - 1) {
            Some(k) if q > 2 && k != 0 => 1,
            _ => 0,
        };
        chi
    }

    pub fn modulus(&self) -> u64 {
        self.group.q
    }

    pub fn exponent_vector(&self) -> &[u32] {
        &self.exponents
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_principal(&self) -> bool {
        self.conductor == 1
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    /// Parity `κ`: `χ(−1) = (−1)^κ`.
    pub fn kappa(&self) -> u8 {
        self.kappa
    }

    /// Root-of-unity index of `χ(n)` over [`Self::order`], `None` when `gcd(n, q) > 1`.
    pub fn index(&self, n: u64) -> Option<u32> {
        if let Some(v) = self.values.get() {
            let k = v[(n % self.modulus()) as usize];
            return (k != NON_UNIT).then_some(k);
        }
        let mut coords = Vec::with_capacity(self.scale.len());
        if !self.group.coordinates(n % self.modulus(), &mut coords) {
            return None;
        }
        let o = self.order as u64;
        let k = coords
            .iter()
            .zip(&self.scale)
            .fold(0u64, |acc, (&c, &s)| (acc + c as u64 * s) % o);
        Some(k as u32)
    }

    /// Full table of indices mod `q`, built on first use.
    pub fn values(&self) -> &[u32] {
        self.values
            .get_or_init(|| Arc::new((0..self.modulus()).map(|n| self.index(n).unwrap_or(NON_UNIT)).collect()))
    }

    pub fn value(&self, n: u64) -> Complex64 {
        match self.index(n) {
            Some(k) => root_of_unity(k, self.order),
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Real part of `χ(n)`; exact for real characters.
    pub fn value_re(&self, n: u64) -> f64 {
        self.value(n).re
    }

    /// Whether `χ` is trivial on every unit `n ≡ 1 (mod d)`.
    fn factors_through(&self, d: u64) -> bool {
        let q = self.modulus();
        (0..q / d).map(|k| 1 + k * d).all(|n| match self.index(n) {
            None => true,
            Some(k) => k == 0,
        })
    }

    /// Smallest `d | q` through which `χ` factors, found by testing each
    /// prime-power component separately against `n ≡ 1 (mod p^c · q/p^e)`.
    fn find_conductor(&self) -> u64 {
        let q = self.modulus();
        let mut f = 1;
        for pp in &self.group.prime_powers {
            let rest = q / pp.pe;
            let mut local = pp.pe;
            let mut d = 1;
            while d < pp.pe {
                if self.factors_through(d * rest) {
                    local = d;
                    break;
                }
                d *= pp.p;
            }
            f *= local;
        }
        f
    }

    /// The product character `χ·ψ`; both must share a modulus.
    pub fn mul(&self, other: &DirichletCharacter) -> DirichletCharacter {
        assert_eq!(self.modulus(), other.modulus());
        let exps = self
            .group
            .generators
            .iter()
            .zip(self.exponents.iter().zip(&other.exponents))
            .map(|(g, (&a, &b))| ((a as u64 + b as u64) % g.order) as u32)
            .collect();
        DirichletCharacter::new(self.group.clone(), exps)
    }

    pub fn conjugate(&self) -> DirichletCharacter {
        let exps = self
            .group
            .generators
            .iter()
            .zip(&self.exponents)
            .map(|(g, &e)| ((g.order - e as u64) % g.order) as u32)
            .collect();
        DirichletCharacter::new(self.group.clone(), exps)
    }

    /// Whether two characters take the same value at every `n` (same modulus).
    pub fn same_values(&self, other: &DirichletCharacter) -> bool {
        self.modulus() == other.modulus()
            && (0..self.modulus()).all(|n| match (self.index(n), other.index(n)) {
                (None, None) => true,
                (Some(a), Some(b)) => a as u64 * other.order as u64 == b as u64 * self.order as u64,
                _ => false,
            })
    }
}

/// All `φ(q)` characters modulo `q`.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    modulus: u64,
    characters: Vec<DirichletCharacter>,
}

impl CharacterGroup {
    pub fn new(q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::Domain("character modulus must be positive".into()));
        }
        if q > MAX_MODULUS {
            return Err(Error::Capacity {
                requested: q,
                ceiling: MAX_MODULUS,
            });
        }
        let data = Arc::new(GroupData::new(q));
        let orders: Vec<u64> = data.generators.iter().map(|g| g.order).collect();
        let size: u64 = orders.iter().product();
        let mut characters = Vec::with_capacity(size as usize);
        let mut exps = vec![0u32; orders.len()];
        for _ in 0..size {
            characters.push(DirichletCharacter::new(data.clone(), exps.clone()));
            // odometer with the first generator most significant
            for j in (0..exps.len()).rev() {
                exps[j] += 1;
                if exps[j] as u64 == orders[j] {
                    exps[j] = 0;
                } else {
                    break;
                }
            }
        }
        Ok(Self { modulus: q, characters })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn characters(&self) -> &[DirichletCharacter] {
        &self.characters
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn principal(&self) -> &DirichletCharacter {
        &self.characters[0]
    }

    /// Position of the character with the given exponent vector.
    pub fn position(&self, exponents: &[u32]) -> Option<usize> {
        self.characters.iter().position(|c| c.exponent_vector() == exponents)
    }

    /// The real non-principal character of conductor 4 (requires `4 | q`).
    pub fn chi4(&self) -> Option<&DirichletCharacter> {
        self.characters.iter().find(|c| c.conductor() == 4 && c.order() == 2)
    }
}

/// `character_group(q)`.
pub fn character_group(q: u64) -> Result<CharacterGroup> {
    CharacterGroup::new(q)
}

/// The non-principal character modulo 4.
pub fn chi4() -> DirichletCharacter {
    CharacterGroup::new(4).expect("modulus 4").characters[1].clone()
}

/// The primitive character inducing `χ`.
pub fn induce_primitive(chi: &DirichletCharacter) -> DirichletCharacter {
    if chi.is_primitive() {
        return chi.clone();
    }
    let f = chi.conductor();
    let group = CharacterGroup::new(f).expect("conductor divides a valid modulus");
    let q = chi.modulus();
    group
        .characters
        .into_iter()
        .find(|psi| {
            psi.is_primitive()
                && (1..q).all(|n| match (chi.index(n), psi.index(n)) {
                    (None, _) => true,
                    (Some(a), Some(b)) => a as u64 * psi.order() as u64 == b as u64 * chi.order() as u64,
                    (Some(_), None) => false,
                })
        })
        .expect("every character is induced by a primitive one")
}

/// `τ(χ) = Σ_{a mod q} χ(a) e^{2πia/q}` by direct summation.
pub fn gauss_sum(chi: &DirichletCharacter) -> Complex64 {
    let q = chi.modulus();
    let (mut re, mut im) = (Neumaier::new(), Neumaier::new());
    for a in 0..q {
        if let Some(k) = chi.index(a) {
            // combine both phases into one exact rational turn
            let (num, den) = (k as u64 * q + a * chi.order() as u64, chi.order() as u64 * q);
            let g = gcd(num % den, den).max(1);
            let z = root_of_unity(((num % den) / g) as u32, (den / g) as u32);
            re.add(z.re);
            im.add(z.im);
        }
    }
    Complex64::new(re.value(), im.value())
}

/// `ε(χ) = τ(χ) / (i^κ √q)` for primitive `χ`.
pub fn root_number(chi: &DirichletCharacter) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::Domain(format!(
            "root number needs a primitive character; induce first (conductor {} < modulus {})",
            chi.conductor(),
            chi.modulus()
        )));
    }
    let i_kappa = if chi.kappa() == 1 {
        Complex64::new(0.0, 1.0)
    } else {
        Complex64::new(1.0, 0.0)
    };
    Ok(gauss_sum(chi) / (i_kappa * (chi.modulus() as f64).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(n: u64) -> u64 {
        (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn modulus_one() {
        let g = character_group(1).unwrap();
        assert_eq!(g.len(), 1);
        let c = &g.characters()[0];
        assert!(c.is_principal());
        assert!((1..20).all(|n| c.value(n) == Complex64::new(1.0, 0.0)));
        assert!(character_group(0).is_err());
    }

    #[test]
    fn modulus_four() {
        let g = character_group(4).unwrap();
        assert_eq!(g.len(), 2);
        let chi = &g.characters()[1];
        assert_eq!(chi.value(3), Complex64::new(-1.0, 0.0));
        assert_eq!(chi.value(1), Complex64::new(1.0, 0.0));
        assert_eq!(chi.value(2), Complex64::new(0.0, 0.0));
        assert_eq!(chi.conductor(), 4);
        assert_eq!(chi.kappa(), 1);
    }

    /// Brute force: all maps on (ℤ/8)* ≅ C2 × C2, conductor by the full
    /// divisor test.
    #[test]
    fn modulus_eight_conductors() {
        let units = [1u64, 3, 5, 7];
        let mut brute_primitive = 0;
        for s3 in [1i32, -1] {
            for s5 in [1i32, -1] {
                // 7 = 3·5 mod 8
                let val = |n: u64| match n % 8 {
                    1 => 1,
                    3 => s3,
                    5 => s5,
                    7 => s3 * s5,
                    _ => 0,
                };
                let f = [1u64, 2, 4, 8]
                    .into_iter()
                    .find(|&d| units.iter().filter(|&&n| n % d == 1 % d).all(|&n| val(n) == 1))
                    .unwrap();
                if f == 8 {
                    brute_primitive += 1;
                }
            }
        }
        assert_eq!(brute_primitive, 2);
        let g = character_group(8).unwrap();
        assert_eq!(g.len(), 4);
        assert_eq!(g.characters().iter().filter(|c| c.conductor() == 8).count(), 2);
    }

    #[test]
    fn group_sizes_and_single_principal() {
        for q in 1..=120 {
            let g = character_group(q).unwrap();
            assert_eq!(g.len() as u64, phi(q), "q={q}");
            assert_eq!(g.characters().iter().filter(|c| c.is_principal()).count(), 1);
            for c in g.characters() {
                assert_eq!(q % c.conductor(), 0);
            }
        }
    }

    #[test]
    fn conductor_matches_full_divisor_test() {
        for q in 1..=64u64 {
            let g = character_group(q).unwrap();
            for c in g.characters() {
                let brute = (1..=q).filter(|d| q % d == 0).find(|&d| c.factors_through(d)).unwrap();
                assert_eq!(c.conductor(), brute, "q={q}");
            }
        }
    }

    #[test]
    fn orthogonality_exact() {
        for q in 1..=50u64 {
            let g = character_group(q).unwrap();
            for n in 1..=1000u64 {
                // the multiset of indices is invariant under multiplication by ψ(n)
                // for every ψ, so the sum is exactly 0 unless all indices vanish
                let all_one = g.characters().iter().all(|c| c.index(n) == Some(0));
                let s: Complex64 = g.characters().iter().map(|c| c.value(n)).sum();
                if n % q == 1 % q {
                    assert!(all_one);
                    assert_eq!(s, Complex64::new(phi(q) as f64, 0.0));
                } else {
                    assert!(!all_one || gcd(n, q) > 1);
                    assert!(s.norm() < 1e-9, "q={q} n={n} s={s}");
                }
            }
        }
    }

    #[test]
    fn conjugates_are_in_group() {
        for q in [5u64, 7, 8, 12, 15, 16, 21, 45] {
            let g = character_group(q).unwrap();
            for c in g.characters() {
                let cb = c.conjugate();
                assert!(g.position(cb.exponent_vector()).is_some());
                for n in 0..q {
                    assert_eq!(cb.value(n), c.value(n).conj());
                }
            }
        }
    }

    #[test]
    fn parity_split_for_odd_primes() {
        for q in [3u64, 5, 7, 11, 13, 47, 53, 97] {
            let g = character_group(q).unwrap();
            let odd = g.characters().iter().filter(|c| c.kappa() == 1).count() as u64;
            assert_eq!(odd, (q - 1) / 2);
            let even_primitive = g
                .characters()
                .iter()
                .filter(|c| c.kappa() == 0 && c.is_primitive())
                .count() as u64;
            assert_eq!(even_primitive, (q - 1) / 2 - 1);
        }
    }

    #[test]
    fn induce_examples() {
        let g = character_group(12).unwrap();
        let p = induce_primitive(g.principal());
        assert_eq!(p.modulus(), 1);
        let c4 = chi4();
        assert!(induce_primitive(&c4).same_values(&c4));
        let g8 = character_group(8).unwrap();
        let from8 = g8.chi4().unwrap();
        let star = induce_primitive(from8);
        assert_eq!(star.modulus(), 4);
        assert!(star.same_values(&c4));
    }

    #[test]
    fn gauss_sum_chi4() {
        let c = chi4();
        let tau = gauss_sum(&c);
        assert!((tau - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        let eps = root_number(&c).unwrap();
        assert!((eps - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let g8 = character_group(8).unwrap();
        assert!(root_number(g8.chi4().unwrap()).is_err());
    }

    #[test]
    fn gauss_sum_modulus_for_primitive() {
        for q in 2..=100u64 {
            for c in character_group(q).unwrap().characters() {
                if c.is_primitive() {
                    let tau = gauss_sum(c);
                    // direct-summation oracle with plain floating phases
                    let oracle: Complex64 = (0..q)
                        .map(|a| c.value(a) * Complex64::from_polar(1.0, 2.0 * PI * a as f64 / q as f64))
                        .sum();
                    assert!((tau - oracle).norm() < 1e-9);
                    assert!((tau.norm() - (q as f64).sqrt()).abs() < 1e-9, "q={q}");
                    assert!((root_number(c).unwrap().norm() - 1.0).abs() < 1e-12);
                }
            }
        }
    }
}
