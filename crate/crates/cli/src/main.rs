//! `prime-bias-lab`: sweeps, explicit-formula residuals and theorem desk checks.
//!
//! Data goes to standard output (or `--output`); findings go to standard
//! error as one JSON block. Exit codes: 0 success, 2 findings, 3 errors,
//! 4 a failed exact identity.

mod cache;
mod config;
mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use prime_bias_core::characters::{character_group, chi4, DirichletCharacter};
use prime_bias_core::checks::{self, CheckOptions, CheckReport};
use prime_bias_core::explicit::{eq301_oracle, eq307_oracle, eq405_oracle, ExplicitEval, Placement};
use prime_bias_core::specials::{c_of_q, odd_primes, threshold_moduli, CentralConstants, CqValue};
use prime_bias_core::sums::{evaluate_series, Finding, SumKind, SumSeries, SumSpec};
use prime_bias_core::zeros::{
    bundled_chi4_zeros, bundled_zeta_zeros, compute_dirichlet_zeros, compute_zeta_zeros, Truncation,
};
use prime_bias_core::{Grid, ZeroLabel, ZeroSet};

use config::{Format, RunConfig, ZeroChoice};
use error::{CliError, EXIT_FINDINGS};

#[derive(Parser)]
#[command(
    name = "prime-bias-lab",
    version,
    about = "Weighted prime sums, explicit formulas and prime-race desk checks"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Flat key=value file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Smallest sieve limit to use.
    #[arg(long, global = true)]
    sieve_limit: Option<String>,
    /// Zero source: bundled, compute:<height>, or a zero file.
    #[arg(long, global = true)]
    zeros: Option<String>,
    /// Zeros per side in explicit sums.
    #[arg(long, global = true)]
    zero_count: Option<String>,
    /// Sample grid start:stop:points:log|linear.
    #[arg(long, global = true)]
    grid: Option<String>,
    /// Tolerance override, repeatable.
    #[arg(long = "tol", global = true, value_name = "KEY=VALUE")]
    tol: Vec<String>,
    /// Keep x at prime powers (half-weight boundary) instead of moving it off.
    #[arg(long, global = true)]
    strict: bool,
    /// Fail instead of sieving when no cache covers the request.
    #[arg(long, global = true)]
    no_build: bool,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Sieve the von Mangoldt table into the cache.
    SieveBuild {
        #[arg(long)]
        limit: Option<String>,
    },
    /// Scan the critical line and write a zero file.
    ZerosCompute {
        #[arg(long)]
        t_max: f64,
        /// Character modulus; omit for zeta.
        #[arg(long)]
        modulus: Option<u64>,
        /// Exponent vector, comma separated; defaults to chi_4 for modulus 4.
        #[arg(long, value_delimiter = ',')]
        character: Option<Vec<u32>>,
    },
    /// Write the configured zero set in zero-file format.
    ZerosExport {
        #[arg(long, value_enum, default_value = "zeta")]
        set: ZeroSetName,
    },
    /// Evaluate one sum kind over a grid.
    SumSweep {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        character: Option<Vec<u32>>,
        #[arg(long)]
        residue: Option<u64>,
        #[arg(long)]
        primed: bool,
        #[arg(long)]
        shift_e2: bool,
    },
    /// Direct sums against truncated explicit formulas.
    ExplicitResidual {
        #[arg(long, value_enum, default_value = "power2")]
        oracle: Oracle,
    },
    /// Desk check for theorem 1 to 7.
    TheoremCheck {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=7))]
        theorem: u8,
        /// Replaces the stop of the default grid.
        #[arg(long)]
        x_max: Option<f64>,
        /// Q for theorem 7; defaults to Q = x at every point.
        #[arg(long)]
        q_max: Option<u64>,
        /// Series written in CSV mode; defaults to the first.
        #[arg(long)]
        series: Option<String>,
    },
    /// Central constants and threshold moduli.
    Constants,
    /// C(q) over odd primes, closed form against the character sum.
    CqScan {
        #[arg(long, default_value_t = 3)]
        q_min: u64,
        #[arg(long, default_value_t = 97)]
        q_max: u64,
    },
    /// The screw function g(t) on a grid of t.
    ScrewPlot,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum ZeroSetName {
    Zeta,
    Chi4,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
enum Oracle {
    /// Log-weighted sum against the squared zero sum.
    Power2,
    /// psi_{1/2} against the first-power zero sum.
    Half,
    /// The chi_4 log-weighted sum.
    Chi4,
}

fn run_config(c: &Common) -> Result<RunConfig, CliError> {
    let mut cfg = match &c.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let pairs = [
        ("sieve_limit", c.sieve_limit.clone()),
        ("zeros", c.zeros.clone()),
        ("zero_count", c.zero_count.clone()),
        ("grid", c.grid.clone()),
        ("threads", c.threads.map(|t| t.to_string())),
    ];
    for (k, v) in pairs {
        if let Some(v) = v {
            cfg.set(k, &v)?;
        }
    }
    if let Some(f) = c.format {
        cfg.format = Some(f);
    }
    if let Some(o) = &c.output {
        cfg.output = Some(o.clone());
    }
    if let Some(d) = &c.cache_dir {
        cfg.cache_dir = d.clone();
    }
    cfg.strict |= c.strict;
    cfg.build &= !c.no_build;
    for t in &c.tol {
        let (k, v) = t
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--tol expects KEY=VALUE, got {t:?}")))?;
        cfg.tolerances.set(k.trim(), v)?;
    }
    Ok(cfg)
}

/// What a command produced: the data and any findings.
struct Outcome {
    data: Vec<u8>,
    findings: Vec<Finding>,
    /// Exact identities that failed.
    broken: Vec<String>,
}

impl Outcome {
    fn data(data: Vec<u8>) -> Self {
        Self {
            data,
            findings: Vec::new(),
            broken: Vec::new(),
        }
    }
}

fn json<T: Serialize>(v: &T) -> Result<Vec<u8>, CliError> {
    let mut s = serde_json::to_vec_pretty(v)?;
    s.push(b'\n');
    Ok(s)
}

const SERIES_HEADER: &str = "x,value,n_terms,comp_bound";

fn series_csv(series: &SumSeries) -> Vec<u8> {
    let mut s = format!("{SERIES_HEADER}\n");
    for p in &series.samples {
        s.push_str(&format!("{},{},{},{:e}\n", p.x, p.value, p.n_terms, p.comp_bound));
    }
    s.into_bytes()
}

fn grid_values(cfg: &RunConfig, default: &str) -> Result<Vec<f64>, CliError> {
    let g = match cfg.grid {
        Some(g) => g,
        None => default.parse::<Grid>()?,
    };
    Ok(g.values())
}

fn character(modulus: u64, exps: Option<&[u32]>) -> Result<DirichletCharacter, CliError> {
    match exps {
        None if modulus == 4 => Ok(chi4()),
        None => Err(CliError::Usage(format!("modulus {modulus} needs --character"))),
        Some(e) => {
            let g = character_group(modulus)?;
            let i = g
                .position(e)
                .ok_or_else(|| CliError::Usage(format!("no character mod {modulus} with exponents {e:?}")))?;
            Ok(g.characters()[i].clone())
        }
    }
}

fn chi4_label() -> ZeroLabel {
    ZeroLabel::Dirichlet {
        modulus: 4,
        exponents: chi4().exponent_vector().to_vec(),
    }
}

fn zero_set(cfg: &RunConfig, set: ZeroSetName) -> Result<ZeroSet, CliError> {
    Ok(match (&cfg.zeros, set) {
        (ZeroChoice::Bundled, ZeroSetName::Zeta) => bundled_zeta_zeros(),
        (ZeroChoice::Bundled, ZeroSetName::Chi4) => bundled_chi4_zeros(),
        (ZeroChoice::Compute(t), ZeroSetName::Zeta) => compute_zeta_zeros(*t)?,
        (ZeroChoice::Compute(t), ZeroSetName::Chi4) => compute_dirichlet_zeros(&chi4(), *t)?,
        (ZeroChoice::File(p), ZeroSetName::Zeta) => ZeroSet::load(p, ZeroLabel::Zeta)?,
        (ZeroChoice::File(p), ZeroSetName::Chi4) => ZeroSet::load(p, chi4_label())?,
    })
}

fn zero_file(set: &ZeroSet) -> Result<Vec<u8>, CliError> {
    let mut out = Vec::new();
    set.write_to(&mut out)?;
    Ok(out)
}

fn sieve_build(cfg: &RunConfig, limit: Option<&str>) -> Result<Outcome, CliError> {
    let limit = match limit {
        Some(l) => {
            let mut c = cfg.clone();
            c.set("sieve_limit", l)?;
            c.sieve_limit.unwrap_or_default()
        }
        None => cfg
            .sieve_limit
            .ok_or_else(|| CliError::Usage("sieve-build needs --limit or sieve_limit".into()))?,
    };
    let t = cache::build(cfg, limit)?;
    let path = cache::cache_path(&cfg.cache_dir, limit);
    #[derive(Serialize)]
    struct Built {
        limit: u64,
        entries: usize,
        path: String,
    }
    let b = Built {
        limit,
        entries: t.len(),
        path: path.display().to_string(),
    };
    Ok(Outcome::data(match cfg.format.unwrap_or(Format::Json) {
        Format::Json => json(&b)?,
        Format::Csv => format!("limit,entries,path\n{},{},{}\n", b.limit, b.entries, b.path).into_bytes(),
    }))
}

fn zeros_compute(t_max: f64, modulus: Option<u64>, exps: Option<&[u32]>) -> Result<Outcome, CliError> {
    let set = match modulus {
        None => compute_zeta_zeros(t_max)?,
        Some(q) => compute_dirichlet_zeros(&character(q, exps)?, t_max)?,
    };
    Ok(Outcome::data(zero_file(&set)?))
}

fn zeros_export(cfg: &RunConfig, set: ZeroSetName) -> Result<Outcome, CliError> {
    let mut z = zero_set(cfg, set)?;
    if let Some(n) = cfg.zero_count {
        z = z.truncated(n);
    }
    Ok(Outcome::data(zero_file(&z)?))
}

fn sum_sweep(cfg: &RunConfig, spec: SumSpec) -> Result<Outcome, CliError> {
    spec.validate()?;
    let xs = cfg
        .grid
        .ok_or_else(|| CliError::Usage("sum-sweep needs --grid".into()))?
        .values();
    let x_max = xs.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let table = cache::table_for(cfg, spec.required_limit(x_max))?;
    let series = evaluate_series(&spec, &xs, &table)?;
    Ok(Outcome::data(match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => series_csv(&series),
        Format::Json => json(&series)?,
    }))
}

fn explicit_residual(cfg: &RunConfig, oracle: Oracle) -> Result<Outcome, CliError> {
    let xs = grid_values(cfg, "1e2:1e6:20:log")?;
    let placement = if cfg.strict {
        Placement::Strict
    } else {
        Placement::OffPrimePower
    };
    let x_max = xs.iter().map(|&x| placement.place(x)).fold(0.0, f64::max);
    let table = cache::table_for(cfg, x_max.ceil() as u64 + 1)?;
    let set = if oracle == Oracle::Chi4 {
        ZeroSetName::Chi4
    } else {
        ZeroSetName::Zeta
    };
    let zeros = zero_set(cfg, set)?;
    let tr = Truncation::Count(cfg.zero_count());
    let chi = chi4();
    let evals = xs
        .iter()
        .map(|&x| match oracle {
            Oracle::Power2 => eq301_oracle(x, tr, &zeros, &table, placement),
            Oracle::Half => eq307_oracle(x, tr, &zeros, &table, placement),
            Oracle::Chi4 => eq405_oracle(x, &chi, tr, &zeros, &table, placement),
        })
        .collect::<Result<Vec<ExplicitEval>, _>>()?;
    #[derive(Serialize)]
    struct Report<'a> {
        oracle: Oracle,
        zero_count: usize,
        evaluations: &'a [ExplicitEval],
    }
    Ok(Outcome::data(match cfg.format.unwrap_or(Format::Csv) {
        Format::Json => json(&Report {
            oracle,
            zero_count: cfg.zero_count(),
            evaluations: &evals,
        })?,
        Format::Csv => {
            let mut s = format!("{SERIES_HEADER},residual,T\n");
            for e in &evals {
                s.push_str(&format!(
                    "{},{},{},{:e},{:e},{}\n",
                    e.x, e.direct.0, e.direct_terms, e.direct_comp_bound, e.residual, e.truncation
                ));
            }
            s.into_bytes()
        }
    }))
}

/// Default grid per theorem, as start, stop and points.
fn theorem_grid(n: u8) -> (f64, f64, usize) {
    match n {
        1 | 3 => (1e3, 1e7, 200),
        6 => (1e3, 1e4, 20),
        7 => (1e3, 1e5, 20),
        _ => (1e3, 1e6, 50),
    }
}

fn theorem_check(
    cfg: &RunConfig,
    n: u8,
    x_max: Option<f64>,
    q_max: Option<u64>,
    series: Option<&str>,
) -> Result<Outcome, CliError> {
    let grid = match (cfg.grid, x_max) {
        (Some(g), None) => g,
        (Some(g), Some(x)) => Grid::new(g.start.min(x), x, g.points, g.spacing)?,
        (None, x) => {
            let (a, b, k) = theorem_grid(n);
            let b = x.unwrap_or(b);
            Grid::new(a.min(b / 10.0), b, k, prime_bias_core::Spacing::Log)?
        }
    };
    if grid.start < 2.0 {
        return Err(CliError::Usage(format!(
            "theorem checks need a grid starting at 2 or above, got {}",
            grid.start
        )));
    }
    let xs = grid.values();
    let table = cache::table_for(cfg, checks::required_limit(n, grid.stop))?;
    let report: CheckReport = checks::theorem_check(n, &xs, &table, &cfg.tolerances, CheckOptions { q_max })?;
    let data = match cfg.format.unwrap_or(Format::Json) {
        Format::Json => json(&report)?,
        Format::Csv => {
            let s = match series {
                Some(name) => report.series(name).ok_or_else(|| {
                    let names: Vec<_> = report.series.iter().map(|s| s.name.as_str()).collect();
                    CliError::Usage(format!("no series {name:?}; available: {}", names.join(", ")))
                })?,
                None => &report.series[0],
            };
            let mut out = format!("{SERIES_HEADER}\n");
            for p in &s.samples {
                out.push_str(&format!("{},{},{},{:e}\n", p.x, p.value, p.n_terms, p.comp_bound));
            }
            out.into_bytes()
        }
    };
    Ok(Outcome {
        data,
        broken: report
            .exact_failures()
            .map(|t| format!("{} at {}: {} vs {}", t.name, t.at, t.measured, t.reference))
            .collect(),
        findings: report.findings,
    })
}

fn constants(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let c = CentralConstants::compute()?;
    let (even, odd) = threshold_moduli();
    #[derive(Serialize)]
    struct Thresholds {
        even: f64,
        odd: f64,
    }
    #[derive(Serialize)]
    struct Constants {
        #[serde(flatten)]
        central: CentralConstants,
        xi_logderiv_half: f64,
        threshold_moduli: Thresholds,
    }
    let out = Constants {
        central: c,
        xi_logderiv_half: c.xi_logderiv_half(),
        threshold_moduli: Thresholds { even, odd },
    };
    Ok(Outcome::data(match cfg.format.unwrap_or(Format::Json) {
        Format::Json => json(&out)?,
        Format::Csv => {
            let rows = [
                ("zeta_logderiv_half", c.zeta_logderiv_half),
                ("zeta_logderiv_half_numeric", c.zeta_logderiv_half_numeric),
                ("zeta_logderiv_prime_half", c.zeta_logderiv_prime_half),
                ("digamma_quarter", c.digamma_quarter),
                ("digamma_three_quarter", c.digamma_three_quarter),
                ("euler_gamma", c.euler_gamma),
                ("minus_zeta_half", c.minus_zeta_half),
                ("xi_logderiv_half", c.xi_logderiv_half()),
                ("threshold_modulus_even", even),
                ("threshold_modulus_odd", odd),
            ];
            let mut s = String::from("name,value\n");
            for (k, v) in rows {
                s.push_str(&format!("{k},{v}\n"));
            }
            s.into_bytes()
        }
    }))
}

fn cq_scan(cfg: &RunConfig, q_min: u64, q_max: u64) -> Result<Outcome, CliError> {
    let values = odd_primes(q_min.max(3), q_max)
        .into_iter()
        .map(c_of_q)
        .collect::<Result<Vec<CqValue>, _>>()?;
    let crossings: Vec<[u64; 2]> = values
        .windows(2)
        .filter(|w| w[0].numeric_re.signum() != w[1].numeric_re.signum())
        .map(|w| [w[0].q, w[1].q])
        .collect();
    #[derive(Serialize)]
    struct Scan<'a> {
        values: &'a [CqValue],
        crossings: Vec<[u64; 2]>,
    }
    Ok(Outcome::data(match cfg.format.unwrap_or(Format::Csv) {
        Format::Json => json(&Scan {
            values: &values,
            crossings,
        })?,
        Format::Csv => {
            let mut s = String::from("q,closed_form,numeric_re,numeric_im\n");
            for v in &values {
                let cf = v.closed_form.map(|c| c.to_string()).unwrap_or_default();
                s.push_str(&format!("{},{},{},{}\n", v.q, cf, v.numeric_re, v.numeric_im));
            }
            s.into_bytes()
        }
    }))
}

fn screw_plot(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let ts = grid_values(cfg, "0.5:15:30:linear")?;
    let spec = SumSpec::new(SumKind::ScrewTotal);
    let t_max = ts.iter().fold(0.0f64, |m, &t| m.max(t.abs()));
    let table = cache::table_for(cfg, spec.required_limit(t_max))?;
    let series = evaluate_series(&spec, &ts, &table)?;
    let findings = series
        .samples
        .iter()
        .find(|s| s.value > 0.0)
        .map(|s| Finding {
            check: "screw_total".into(),
            at: s.x,
            value: s.value,
            expectation: "-g(t) >= 0".into(),
            hypothesis: "RH",
        })
        .into_iter()
        .collect();
    Ok(Outcome {
        data: match cfg.format.unwrap_or(Format::Csv) {
            Format::Csv => series_csv(&series),
            Format::Json => json(&series)?,
        },
        findings,
        broken: Vec::new(),
    })
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::SieveBuild { limit } => sieve_build(cfg, limit.as_deref()),
        Command::ZerosCompute {
            t_max,
            modulus,
            character: c,
        } => zeros_compute(*t_max, *modulus, c.as_deref()),
        Command::ZerosExport { set } => zeros_export(cfg, *set),
        Command::SumSweep {
            kind,
            modulus,
            character: c,
            residue,
            primed,
            shift_e2,
        } => {
            let mut spec = SumSpec::new(kind.parse::<SumKind>()?);
            spec.modulus = *modulus;
            spec.character = c.clone();
            spec.residue = *residue;
            spec.primed |= *primed;
            spec.shift_e2 = *shift_e2;
            sum_sweep(cfg, spec)
        }
        Command::ExplicitResidual { oracle } => explicit_residual(cfg, *oracle),
        Command::TheoremCheck {
            theorem,
            x_max,
            q_max,
            series,
        } => theorem_check(cfg, *theorem, *x_max, *q_max, series.as_deref()),
        Command::Constants => constants(cfg),
        Command::CqScan { q_min, q_max } => cq_scan(cfg, *q_min, *q_max),
        Command::ScrewPlot => screw_plot(cfg),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::SieveBuild { .. } => "sieve-build",
        Command::ZerosCompute { .. } => "zeros-compute",
        Command::ZerosExport { .. } => "zeros-export",
        Command::SumSweep { .. } => "sum-sweep",
        Command::ExplicitResidual { .. } => "explicit-residual",
        Command::TheoremCheck { .. } => "theorem-check",
        Command::Constants => "constants",
        Command::CqScan { .. } => "cq-scan",
        Command::ScrewPlot => "screw-plot",
    }
}

fn write_data(cfg: &RunConfig, data: &[u8]) -> Result<(), CliError> {
    match &cfg.output {
        Some(p) => std::fs::write(p, data)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(data)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let cfg = run_config(&cli.common)?;
    if let Some(n) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    let outcome = dispatch(cli, &cfg)?;
    write_data(&cfg, &outcome.data)?;
    if !outcome.findings.is_empty() {
        #[derive(Serialize)]
        struct Report<'a> {
            command: &'static str,
            findings: &'a [Finding],
        }
        let block = json(&Report {
            command: command_name(&cli.command),
            findings: &outcome.findings,
        })?;
        std::io::stderr().write_all(&block)?;
    }
    if !outcome.broken.is_empty() {
        return Err(CliError::Identity(outcome.broken.join("; ")));
    }
    Ok(if outcome.findings.is_empty() { 0 } else { EXIT_FINDINGS })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("prime-bias-lab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
