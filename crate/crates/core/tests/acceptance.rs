//! The acceptance suite: thirteen criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so that every line is printed whether
//! or not earlier criteria fail. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use prime_bias_core::checks::{self, CheckOptions, CheckReport};
use prime_bias_core::explicit::{eq301_oracle, eq307_oracle, Placement};
use prime_bias_core::specials::{c_of_q, digamma, odd_primes, threshold_moduli, CentralConstants};
use prime_bias_core::sums::{
    evaluate_series, residue_sum, residue_sum_by_characters, theorem7_sum, ResidueKind, SumKind, SumSpec, Theorem7Path,
    Theorem7Variant,
};
use prime_bias_core::zeros::{bundled_zeta_zeros, compute_zeta_zeros, riemann_von_mangoldt, Truncation, ZetaLine};
use prime_bias_core::{Grid, MangoldtTable, Spacing, Tolerances, ZeroSet};

type Outcome = Result<String, String>;

struct Fixture {
    small: MangoldtTable,
    large: MangoldtTable,
    zeros: ZeroSet,
    tol: Tolerances,
}

fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    Grid::new(a, b, n, Spacing::Log).unwrap().values()
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    format!("error: {e}")
}

/// Digits of `v` truncated (not rounded) to `d` decimals, as printed in the source.
fn truncated(v: f64, d: i32) -> f64 {
    let m = 10f64.powi(d);
    (v * m).trunc() / m
}

fn criterion_1(_: &Fixture) -> Outcome {
    let c = CentralConstants::compute().map_err(err)?;
    let dq = digamma(0.25).map_err(err)?;
    let (even, odd) = threshold_moduli();
    let close = |a: f64, b: f64, d: i32| (a - b).abs() < 0.5 * 10f64.powi(-d) + 1e-12;
    let ok = close(c.zeta_logderiv_half, 2.68609, 5)
        && close(c.zeta_logderiv_half_numeric, 2.68609, 5)
        && close(dq, -4.22745, 5)
        && close(truncated(even, 3), 215.332, 3)
        && close(truncated(odd, 3), 9.305, 3);
    verdict(
        ok,
        format!(
            "zeta'/zeta(1/2) = {:.8} (numeric {:.8}), digamma(1/4) = {dq:.8}, thresholds {even:.6}, {odd:.6}",
            c.zeta_logderiv_half, c.zeta_logderiv_half_numeric
        ),
    )
}

fn criterion_2(f: &Fixture) -> Outcome {
    let xi = CentralConstants::compute().map_err(err)?.xi_logderiv_half();
    verdict(xi.abs() <= f.tol.xi_identity, format!("xi'/xi(1/2) = {xi:e}"))
}

fn criterion_3(f: &Fixture) -> Outcome {
    // x = 10⁶ is placed at 10⁶ + 1/2, just past the 10⁶ sieve
    let xs = log_grid(1e2, 1e6, 20);
    let n = f.tol.residual_zero_count;
    let few = Truncation::Count(500);
    let full = Truncation::Count(n);
    let mut worst301: f64 = 0.0;
    let mut worst307: f64 = 0.0;
    let (mut mean_full, mut mean_few) = (0.0, 0.0);
    for &x in &xs {
        let a = eq301_oracle(x, full, &f.zeros, &f.large, Placement::OffPrimePower).map_err(err)?;
        let b = eq307_oracle(x, full, &f.zeros, &f.large, Placement::OffPrimePower).map_err(err)?;
        let c = eq301_oracle(x, few, &f.zeros, &f.large, Placement::OffPrimePower).map_err(err)?;
        let d = eq307_oracle(x, few, &f.zeros, &f.large, Placement::OffPrimePower).map_err(err)?;
        worst301 = worst301.max(a.residual);
        worst307 = worst307.max(b.residual);
        mean_full += a.residual + b.residual;
        mean_few += c.residual + d.residual;
    }
    let k = 2.0 * xs.len() as f64;
    let (mean_full, mean_few) = (mean_full / k, mean_few / k);
    verdict(
        worst301 <= f.tol.eq301_residual && worst307 <= f.tol.eq307_residual && mean_full <= mean_few,
        format!(
            "T = {n} zeros: max power-2 residual {worst301:.2e}, max s = 1/2 residual {worst307:.2e}; \
             mean residual {mean_full:.2e} at T = {n} vs {mean_few:.2e} at T = 500"
        ),
    )
}

fn conditional(r: &CheckReport, series: &str, target: &str) -> Outcome {
    let findings: Vec<_> = r
        .findings
        .iter()
        .filter(|x| x.check == series || x.check == target)
        .collect();
    let t = r.target(target).ok_or("missing target")?;
    let detail = format!(
        "{} samples, findings {:?}; {target} = {:.6} vs [{:.6}, {:.6}] at x = {:e}; exact failures {}",
        r.series(series).map_or(0, |s| s.samples.len()),
        findings.iter().map(|x| (x.at, x.value)).collect::<Vec<_>>(),
        t.measured,
        t.lo,
        t.hi,
        t.at,
        r.exact_failures().count()
    );
    verdict(findings.is_empty() && t.pass && r.exact_failures().count() == 0, detail)
}

fn criterion_4(f: &Fixture) -> Outcome {
    let xs = log_grid(1e3, 1e7, 200);
    let r = checks::theorem1(&xs, &f.large, &f.tol).map_err(err)?;
    conditional(&r, "f_log_minus_4sqrt", "riesz_limit")
}

fn criterion_5(f: &Fixture) -> Outcome {
    let xs = log_grid(1e3, 1e7, 200);
    let r = checks::theorem3(&xs, &f.large, &f.tol).map_err(err)?;
    let closed = r.target("chi4_logderiv_closed_form").ok_or("missing target")?;
    let base = conditional(&r, "f_chi4", "riesz_chi4_limit");
    let note = format!("closed-form gap {:.1e}", (closed.measured - closed.reference).abs());
    match base {
        Ok(d) if closed.pass => Ok(format!("{d}; {note}")),
        Ok(d) | Err(d) => Err(format!("{d}; {note}")),
    }
}

fn criterion_6(f: &Fixture) -> Outcome {
    let x = 1e4;
    let mut worst: f64 = 0.0;
    for q in checks::RESIDUE_MODULI {
        for kind in [ResidueKind::Fq, ResidueKind::CapitalFq] {
            let a = residue_sum(x, q, &f.small, kind).map_err(err)?.value;
            let b = residue_sum_by_characters(x, q, &f.small, kind).map_err(err)?.value;
            worst = worst.max((a - b).abs());
        }
    }
    let px = checks::THEOREM7_PATH_X;
    let mut worst7: f64 = 0.0;
    for v in [Theorem7Variant::Eq126, Theorem7Variant::Eq127] {
        let a = theorem7_sum(px as f64, px, &f.small, Theorem7Path::Bruteforce, v)
            .map_err(err)?
            .value;
        let b = theorem7_sum(px as f64, px, &f.small, Theorem7Path::Fast, v)
            .map_err(err)?
            .value;
        worst7 = worst7.max((a - b).abs());
    }
    verdict(
        worst <= f.tol.two_path && worst7 <= f.tol.theorem7_paths,
        format!("residue routes differ by {worst:.1e} (q in 3,4,5,8, x = 1e4); Theorem 7 paths by {worst7:.1e} at x = Q = {px}"),
    )
}

fn criterion_7(f: &Fixture) -> Outcome {
    let r = checks::theorem7(&[1e5], &f.large, &f.tol, CheckOptions { q_max: None }).map_err(err)?;
    let a = r.target("eq126_ratio").ok_or("missing target")?;
    let b = r.target("eq127_ratio").ok_or("missing target")?;
    verdict(
        a.pass && b.pass,
        format!(
            "x = Q = 1e5: log-weight ratio {:.4} in [{}, {}]: {}; shifted ratio {:.4} in [{}, {}]: {}",
            a.measured, a.lo, a.hi, a.pass, b.measured, b.lo, b.hi, b.pass
        ),
    )
}

fn criterion_8(f: &Fixture) -> Outcome {
    let r = checks::theorem4(&[1e6], &f.large, &f.tol).map_err(err)?;
    let a = r.target("prime_only_sqrtlog_ratio").ok_or("missing target")?;
    let b = r.target("square_term_ratio").ok_or("missing target")?;
    verdict(
        a.pass && b.pass,
        format!(
            "x = 1e6: prime-only ratio {:.4} in [{}, {}]: {}; square-term ratio {:.4} in [{}, {}]: {}",
            a.measured, a.lo, a.hi, a.pass, b.measured, b.lo, b.hi, b.pass
        ),
    )
}

fn criterion_9(f: &Fixture) -> Outcome {
    let ts = checks::screw_grid();
    let r = checks::screw(&ts, &f.large).map_err(err)?;
    let g = r.series("screw_total").ok_or("missing series")?;
    let max = g.samples.iter().map(|s| s.value).fold(f64::NEG_INFINITY, f64::max);
    verdict(
        r.findings.is_empty() && r.targets.iter().all(|t| t.pass) && g.samples.len() == 30,
        format!(
            "{} grid points, max g(t) = {max:.4}, g0(0) and ginf(0) exact: {}",
            g.samples.len(),
            r.targets.iter().all(|t| t.pass)
        ),
    )
}

fn criterion_10(f: &Fixture) -> Outcome {
    let mut xs: Vec<f64> = (5..2000).map(|k| 0.5 * k as f64).collect();
    xs.extend(log_grid(1000.5, 1e6, 400));
    let r = checks::johnston(&xs, &f.small).map_err(err)?;
    let max = |name: &str| {
        r.series(name)
            .map(|s| s.samples.iter().map(|p| p.value).fold(f64::NEG_INFINITY, f64::max))
            .unwrap_or(f64::NAN)
    };
    verdict(
        r.findings.is_empty(),
        format!(
            "{} samples in (2, 1e6]: max theta integral {:.4}, max pi integral {:.4}",
            xs.len(),
            max("johnston_theta"),
            max("johnston_pi")
        ),
    )
}

fn criterion_11(f: &Fixture) -> Outcome {
    let primes = odd_primes(3, 97);
    let mut gap: f64 = 0.0;
    let mut imag: f64 = 0.0;
    let mut values = Vec::new();
    for &q in &primes {
        let c = c_of_q(q).map_err(err)?;
        gap = gap.max((c.closed_form.ok_or("no closed form")? - c.numeric_re).abs());
        imag = imag.max(c.numeric_im.abs());
        values.push((q, c.numeric_re));
    }
    let crossings: Vec<(u64, u64)> = values
        .windows(2)
        .filter(|w| w[0].1.signum() != w[1].1.signum())
        .map(|w| (w[0].0, w[1].0))
        .collect();
    let orientation = if values[0].1 > 0.0 {
        "positive below, negative above"
    } else {
        "negative below, positive above"
    };
    verdict(
        gap <= f.tol.cq_agreement && imag <= f.tol.cq_imaginary && crossings == [(47, 53)],
        format!(
            "{} primes: closed-form gap {gap:.1e}, max |Im| {imag:.1e}, crossings {crossings:?}, orientation: {orientation}",
            primes.len()
        ),
    )
}

/// Bisection of Hardy's `Z` on a bracket, carried to the floating-point limit.
fn refine(line: &ZetaLine, mut a: f64, mut b: f64) -> f64 {
    let sa = line.hardy_z(a).signum();
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        if line.hardy_z(m).signum() == sa {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn criterion_12(f: &Fixture) -> Outcome {
    let low = compute_zeta_zeros(100.0).map_err(err)?;
    let smooth = riemann_von_mangoldt(100.0);
    let count_ok = low.len() == 29 && (smooth - 29.0).abs() < 0.5;
    let line = ZetaLine::new(20.0);
    let first = refine(&line, 14.0, 14.3);
    let first_gap = (low.ordinates()[0] - first).abs();
    let bundled = bundled_zeta_zeros();
    let loaded_gap = f
        .zeros
        .ordinates()
        .iter()
        .zip(bundled.ordinates())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    verdict(
        count_ok && first_gap <= 1e-6 && loaded_gap <= 1e-9 && f.zeros.len() == bundled.len(),
        format!(
            "{} ordinates below 100 (smooth count {smooth:.3}); first {:.12} vs refined {first:.12}; \
             computed vs bundled max gap {loaded_gap:.1e} over {} ordinates",
            low.len(),
            low.ordinates()[0],
            f.zeros.len()
        ),
    )
}

fn sweep_bytes(f: &Fixture) -> Result<Vec<u8>, String> {
    let mut out = Vec::new();
    let xs = log_grid(100.0, 2e4, 16);
    let ts: Vec<f64> = (1..=10).map(|k| k as f64).collect();
    let small_x: Vec<f64> = log_grid(50.0, 1000.0, 6);
    for &kind in SumKind::ALL {
        let mut spec = SumSpec::new(kind);
        let grid = match kind {
            SumKind::ScrewG0 | SumKind::ScrewGinf | SumKind::ScrewTotal => &ts,
            SumKind::Thm7Bruteforce => &small_x,
            _ => &xs,
        };
        if matches!(
            kind,
            SumKind::ResidueFq | SumKind::ResidueCapitalFq | SumKind::RieszQ | SumKind::RieszQLognorm
        ) {
            spec.modulus = Some(4);
        }
        let series = evaluate_series(&spec, grid, &f.small).map_err(err)?;
        for s in series.samples {
            for v in [s.x, s.value, s.comp_bound] {
                out.extend_from_slice(&v.to_bits().to_le_bytes());
            }
            out.extend_from_slice(&s.n_terms.to_le_bytes());
        }
    }
    for x in log_grid(1e2, 1e5, 5) {
        let e = eq301_oracle(x, Truncation::Count(2000), &f.zeros, &f.small, Placement::OffPrimePower).map_err(err)?;
        out.extend_from_slice(&e.residual.to_bits().to_le_bytes());
        out.extend_from_slice(&e.zero_part.0.to_bits().to_le_bytes());
    }
    Ok(out)
}

fn criterion_13(f: &Fixture) -> Outcome {
    let mut runs = Vec::new();
    for threads in [1, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(err)?;
        runs.push(pool.install(|| sweep_bytes(f))?);
    }
    verdict(
        runs[0] == runs[1] && runs[0] == runs[2],
        format!(
            "{} sum kinds plus explicit residuals, {} bytes per run, identical across 1/2/8 threads: {}",
            SumKind::ALL.len(),
            runs[0].len(),
            runs[0] == runs[1] && runs[0] == runs[2]
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let fixture = Fixture {
        small: MangoldtTable::build(1_000_000).expect("sieve to 1e6"),
        large: MangoldtTable::build(10_000_000).expect("sieve to 1e7"),
        zeros: compute_zeta_zeros(2600.0).expect("zero scan").truncated(2000),
        tol: Tolerances::default(),
    };
    println!("acceptance: fixtures ready in {:.1}s", start.elapsed().as_secs_f64());
    let criteria: [(&str, fn(&Fixture) -> Outcome); 13] = [
        ("constants", criterion_1),
        ("xi identity", criterion_2),
        ("explicit-formula oracles", criterion_3),
        ("Theorem 1 desk check", criterion_4),
        ("Theorem 3 desk check", criterion_5),
        ("two-path equalities", criterion_6),
        ("Theorem 7 asymptotics", criterion_7),
        ("Theorem 4/5 family", criterion_8),
        ("screw function", criterion_9),
        ("Johnston negativity", criterion_10),
        ("C(q) two-path agreement", criterion_11),
        ("zero machinery", criterion_12),
        ("determinism", criterion_13),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run(&fixture);
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(d) => println!("PASS criterion {:2} ({name}, {secs:.1}s): {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL criterion {:2} ({name}, {secs:.1}s): {d}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
