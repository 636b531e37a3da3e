//! Property tests for the invariants the numerical modules promise.

use std::sync::OnceLock;

use proptest::prelude::*;

use prime_bias_core::arith::totient;
use prime_bias_core::characters::character_group;
use prime_bias_core::sums::{f_log, f_log_shifted, lambda_sum, psi_half, riesz_sum, Boundary, Restriction};
use prime_bias_core::zeros::{bundled_zeta_zeros, zero_sum, Truncation};
use prime_bias_core::{Grid, MangoldtTable, Spacing, ZeroSet};

const LIMIT: u64 = 200_000;

fn table() -> &'static MangoldtTable {
    static T: OnceLock<MangoldtTable> = OnceLock::new();
    T.get_or_init(|| MangoldtTable::build(LIMIT).unwrap())
}

fn zeros() -> &'static ZeroSet {
    static Z: OnceLock<ZeroSet> = OnceLock::new();
    Z.get_or_init(|| bundled_zeta_zeros().truncated(300))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn trial_mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    if m == 1 {
        (p as f64).ln()
    } else {
        0.0
    }
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sieve_matches_trial_division(n in 1u64..LIMIT) {
        prop_assert_eq!(table().mangoldt(n), trial_mangoldt(n));
    }

    #[test]
    fn characters_are_multiplicative_and_periodic(q in 1u64..60, pick in 0usize..1000, a in 0u64..500, b in 0u64..500) {
        let g = character_group(q).unwrap();
        prop_assert_eq!(g.len() as u64, totient(q));
        let chi = &g.characters()[pick % g.len()];
        let prod = chi.value(a) * chi.value(b);
        prop_assert!((chi.value(a * b) - prod).norm() < 1e-12);
        prop_assert!((chi.value(a + q) - chi.value(a)).norm() < 1e-12);
        if gcd(a, q) != 1 {
            prop_assert_eq!(chi.value(a).norm(), 0.0);
        } else {
            prop_assert!((chi.value(a).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn orthogonality_over_the_group(q in 1u64..40, a in 0u64..200) {
        let g = character_group(q).unwrap();
        let s: num_complex::Complex64 = g.characters().iter().map(|c| c.value(a)).sum();
        let expect = if a % q == 1 % q { g.len() as f64 } else { 0.0 };
        prop_assert!((s.re - expect).abs() < 1e-9 && s.im.abs() < 1e-9);
    }

    #[test]
    fn zero_sum_parity_under_inversion(log_x in 0.1f64..12.0) {
        let (x, y) = (log_x.exp(), (-log_x).exp());
        let z = zeros();
        let p1 = (zero_sum(x, z, 1, Truncation::All).unwrap().value, zero_sum(y, z, 1, Truncation::All).unwrap().value);
        let p2 = (zero_sum(x, z, 2, Truncation::All).unwrap().value, zero_sum(y, z, 2, Truncation::All).unwrap().value);
        prop_assert!((p1.0 + p1.1).abs() < 1e-10, "power 1 is odd in log x: {:?}", p1);
        prop_assert!((p2.0 - p2.1).abs() < 1e-12, "power 2 is even in log x: {:?}", p2);
    }

    #[test]
    fn power_two_sum_is_bounded_by_its_value_at_one(log_x in 0.0f64..16.0) {
        let z = zeros();
        let at_one = zero_sum(1.0, z, 2, Truncation::All).unwrap().value;
        let v = zero_sum(log_x.exp(), z, 2, Truncation::All).unwrap().value;
        prop_assert!(v.abs() <= at_one.abs() * (1.0 + 1e-12));
    }

    #[test]
    fn riesz_times_log_is_the_log_weighted_sum(x in 2.5f64..(LIMIT as f64)) {
        let r = riesz_sum(x, table()).unwrap().value * x.ln();
        let f = f_log(x, table(), &Restriction::All).unwrap().value - 4.0 * x.sqrt();
        prop_assert!(close(r, f, 1e-9), "{} vs {}", r, f);
    }

    #[test]
    fn primed_value_at_a_prime_power_is_the_midpoint(i in 0usize..5000) {
        let n = table().n(i) as f64;
        let at = psi_half(n, table(), &Restriction::All).unwrap().value;
        let below = psi_half(n - 0.25, table(), &Restriction::All).unwrap().value;
        let above = psi_half(n + 0.25, table(), &Restriction::All).unwrap().value;
        prop_assert!(close(at, 0.5 * (below + above), 1e-12));
    }

    #[test]
    fn shifted_sum_splits_at_x(x in 10.0f64..(LIMIT as f64 / 7.5)) {
        let t = table();
        let whole = f_log_shifted(x, t, &Restriction::All, Boundary::Full).unwrap().value;
        let head = f_log(x, t, &Restriction::All).unwrap().value;
        let lx = x.ln();
        let tail = lambda_sum(t, x * std::f64::consts::E.powi(2), Boundary::Full, &Restriction::All, |term| {
            if term.n as f64 > x { (term.ln_n - lx) / (term.n as f64).sqrt() } else { 0.0 }
        }).unwrap().value;
        prop_assert!(close(whole, head - tail, 1e-9));
    }

    #[test]
    fn principal_character_drops_non_units(q in 1u64..30, x in 10.0f64..20_000.0) {
        let t = table();
        let g = character_group(q).unwrap();
        let via_chi = f_log(x, t, &Restriction::Character(g.principal().clone())).unwrap().value;
        let lx = x.ln();
        let direct = lambda_sum(t, x, Boundary::Full, &Restriction::All, |term| {
            if gcd(term.n, q) == 1 { (lx - term.ln_n) / (term.n as f64).sqrt() } else { 0.0 }
        }).unwrap().value;
        prop_assert!(close(via_chi, direct, 1e-12));
    }

    #[test]
    fn grids_increase_strictly(a in 1.0f64..1e3, span in 1.001f64..1e4, n in 2usize..300, log in any::<bool>()) {
        let spacing = if log { Spacing::Log } else { Spacing::Linear };
        let v = Grid::new(a, a * span, n, spacing).unwrap().values();
        prop_assert_eq!(v.len(), n);
        prop_assert!(v.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!((v[0], v[n - 1]), (a, a * span));
    }
}
