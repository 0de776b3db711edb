//! The `frob` command line.
//!
//! Exit codes: 0 on success, 1 for invalid input (including unknown flags),
//! 2 for failures while running a valid request.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bounds::{evaluate_all, BoundKind};
use crate::counterexamples::{search_selmer_failures, verify_failure};
use crate::error::{Error, Result};
use crate::frobenius::frobenius_exact;
use crate::montecarlo::{run_sweep, selmer_violations, summarize};
use crate::report::{self, render_table, Echo};
use crate::sampling::SamplerConfig;
use crate::subquadratic::{build_table, first_violation, ratio_series};
use crate::vectors::{CoinVector, ConditionKind};

pub const DEFAULT_SEED: u64 = 42;
pub const SEED_ENV: &str = "FROB_SEED";
const DEFAULT_EPSILONS: &str = "0.005,0.01,0.02,0.05,0.1,0.2";

#[derive(Debug, Parser)]
#[command(
    name = "frob",
    version,
    about = "Frobenius numbers, upper bounds and reproducible bound comparisons",
    after_help = "Ranges are written lo:hi (inclusive); lists are comma-separated."
)]
pub struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact Frobenius number of one vector
    Compute {
        /// Entries, e.g. 8,32,59
        #[arg(long)]
        vector: String,
    },
    /// Evaluate every bound of a regime on one vector
    Bounds {
        #[arg(long)]
        vector: String,
        /// gcd | coprime
        #[arg(long, default_value = "gcd")]
        regime: String,
    },
    /// Monte Carlo comparison of the bounds
    Simulate(SimulateArgs),
    /// Search sorted triples on which the Selmer formula fails
    Counterexamples {
        /// Values of a_1, e.g. 4:8 or 4,5,6
        #[arg(long, default_value = "4:8")]
        a1: String,
        /// Largest entry
        #[arg(long = "max", default_value_t = 60)]
        max_entry: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// F(p, p+1) against C (p(p+1))^(1-eps)
    Subquadratic(PrimeArgs),
    /// F(p, p+1) / (C (p(p+1))^(1-eps)) per prime
    Ratio(PrimeArgs),
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Dimensions, e.g. 3:10
    #[arg(long = "n", default_value = "3")]
    dims: String,
    /// Lower entry bound (default: n)
    #[arg(long)]
    k: Option<u64>,
    /// Upper entry bound
    #[arg(long, default_value_t = 100)]
    m: u64,
    /// Trials per dimension
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    /// gcd | coprime
    #[arg(long, default_value = "gcd")]
    regime: String,
    /// Master seed (falls back to $FROB_SEED, then 42)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = SamplerConfig::DEFAULT_MAX_ATTEMPTS)]
    max_attempts: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PrimeArgs {
    /// Constant C
    #[arg(long = "c", default_value_t = 1.0)]
    c_const: f64,
    /// Epsilons, comma-separated
    #[arg(long, default_value = DEFAULT_EPSILONS)]
    eps: String,
    /// Largest prime considered
    #[arg(long, default_value_t = 59)]
    primes: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses `lo:hi`, `a,b,c` or a mix such as `2,4:6`.
pub fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    let bad = |t: &str| Error::Validation(format!("`{t}` is not an integer, range or list"));
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match item.split_once(':') {
            Some((lo, hi)) => {
                let lo: u64 = lo.trim().parse().map_err(|_| bad(item))?;
                let hi: u64 = hi.trim().parse().map_err(|_| bad(item))?;
                if lo > hi {
                    return Err(Error::Validation(format!("empty range `{item}`")));
                }
                out.extend(lo..=hi);
            }
            None => out.push(item.parse().map_err(|_| bad(item))?),
        }
    }
    if out.is_empty() {
        return Err(Error::Validation(format!("`{s}` is empty")));
    }
    Ok(out)
}

pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    let out = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::Validation(format!("`{t}` is not a number")))
        })
        .collect::<Result<Vec<_>>>()?;
    if out.is_empty() {
        return Err(Error::Validation(format!("`{s}` is empty")));
    }
    Ok(out)
}

fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("{SEED_ENV}=`{v}` is not a 64-bit integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn prepare_out(dir: &Option<PathBuf>) -> Result<Option<&Path>> {
    match dir {
        Some(d) => {
            fs::create_dir_all(d)?;
            Ok(Some(d.as_path()))
        }
        None => Ok(None),
    }
}

fn echo(pairs: &[(&str, String)]) -> Echo {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn bool_word(b: bool) -> String {
    if b { "True" } else { "False" }.to_string()
}

/// Runs the CLI on `argv` (program name first), writing to the given streams.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };

    let mut buf = Vec::new();
    let result = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(pool) => pool.install(|| dispatch(cli.command, &mut buf)),
        Err(e) => Err(Error::Io(format!("cannot start worker pool: {e}"))),
    };
    let _ = out.write_all(&buf);
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_validation() {
                1
            } else {
                2
            }
        }
    }
}

fn dispatch(command: Command, out: &mut Vec<u8>) -> Result<()> {
    match command {
        Command::Compute { vector } => compute(&vector, out),
        Command::Bounds { vector, regime } => bounds(&vector, &regime, out),
        Command::Simulate(args) => simulate(args, out),
        Command::Counterexamples {
            a1,
            max_entry,
            out: dir,
        } => counterexamples(&a1, max_entry, &dir, out),
        Command::Subquadratic(args) => subquadratic(args, out),
        Command::Ratio(args) => ratio(args, out),
    }
}

fn compute(vector: &str, out: &mut dyn Write) -> Result<()> {
    let v: CoinVector = vector.parse()?;
    let f = frobenius_exact(&v)?;
    let rows = vec![
        vec!["vector".into(), v.to_string()],
        vec!["n".into(), v.dim().to_string()],
        vec!["modulus".into(), v.first().to_string()],
    ];
    write!(out, "{}", render_table(&["field", "value"], &rows))?;
    writeln!(out, "F = {}", f.value)?;
    Ok(())
}

fn bounds(vector: &str, regime: &str, out: &mut dyn Write) -> Result<()> {
    let v: CoinVector = vector.parse()?;
    let regime: ConditionKind = regime.parse()?;
    let evals = evaluate_all(&v, regime)?;
    let f = frobenius_exact(&v)?.value;
    writeln!(out, "vector {v}  regime {regime}  F = {f}")?;
    let rows: Vec<Vec<String>> = evals
        .iter()
        .map(|e| {
            let shown = e
                .value
                .map_or_else(|| report::NA.to_string(), |x| x.to_string());
            let diff = e
                .applicable_value()
                .map_or_else(|| report::NA.to_string(), |x| x.minus(f).to_string());
            vec![
                e.kind.to_string(),
                shown,
                e.applicable.to_string(),
                diff,
                e.reason.clone().unwrap_or_default(),
            ]
        })
        .collect();
    write!(
        out,
        "{}",
        render_table(&["bound", "value", "applicable", "bound-F", "note"], &rows)
    )?;
    if v.dim() >= 3 {
        if let Ok(row) = verify_failure(&v) {
            writeln!(
                out,
                "selmer check: F = {} vs {} -> {}",
                row.frobenius,
                row.selmer_value,
                if row.fails { "fails" } else { "holds" }
            )?;
        }
    }
    Ok(())
}

fn simulate(args: SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let dims: Vec<usize> = parse_u64_list(&args.dims)?
        .into_iter()
        .map(|d| d as usize)
        .collect();
    let regime: ConditionKind = args.regime.parse()?;
    let seed = resolve_seed(args.seed)?;
    if args.trials == 0 {
        return Err(Error::Validation("trials must be at least 1".into()));
    }
    let template = SamplerConfig {
        max_attempts_per_trial: args.max_attempts,
        ..SamplerConfig::new(dims[0], args.m, regime, seed)
    };
    for &n in &dims {
        SamplerConfig {
            n,
            k: args.k.unwrap_or(n as u64),
            ..template.clone()
        }
        .validate()?;
    }
    let dir = prepare_out(&args.out)?;

    let records = run_sweep(&template, &dims, args.k, args.trials)?;

    let k_desc = args.k.map_or_else(|| "n".to_string(), |k| k.to_string());
    let e = echo(&[
        ("seed", seed.to_string()),
        ("n", args.dims.clone()),
        ("k", k_desc),
        ("m", args.m.to_string()),
        ("condition", regime.to_string()),
        ("trials", args.trials.to_string()),
        ("max_attempts", args.max_attempts.to_string()),
    ]);
    let summary = report::summary_rows(&records, regime);
    let ratios = report::ratio_rows(&records);
    if let Some(d) = dir {
        report::write_csv(
            &d.join("trials.csv"),
            &e,
            &report::TRIALS_HEADER,
            &report::trial_rows(&records),
        )?;
        report::write_csv(
            &d.join("summary.csv"),
            &e,
            &report::SUMMARY_HEADER,
            &summary,
        )?;
        report::write_csv(&d.join("ratios.csv"), &e, &report::RATIOS_HEADER, &ratios)?;
    }

    write!(out, "{}", render_table(&report::SUMMARY_HEADER, &summary))?;
    if regime == ConditionKind::PairwiseCoprime {
        let zero = ratios.iter().filter(|r| r[3] == "zero_denominator").count();
        let negative = ratios
            .iter()
            .filter(|r| r[3] == "negative_denominator")
            .count();
        writeln!(out, "selmer violations: {}", selmer_violations(&records))?;
        writeln!(
            out,
            "R_n excluded (zero denominator): {zero}; negative denominator: {negative}"
        )?;
        if let Ok(s) = summarize(&records, BoundKind::WHMinSyl) {
            writeln!(out, "whminsyl median diff: {}", s.median)?;
        }
    }
    Ok(())
}

fn counterexamples(
    a1: &str,
    max_entry: u64,
    dir: &Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<()> {
    let a1s = parse_u64_list(a1)?;
    let rows = search_selmer_failures(&a1s, max_entry)?;
    let dir = prepare_out(dir)?;
    let table = report::counterexample_rows(&rows);
    if let Some(d) = dir {
        let e = echo(&[("a1", a1.to_string()), ("max", max_entry.to_string())]);
        report::write_csv(
            &d.join("counterexamples.csv"),
            &e,
            &report::COUNTEREXAMPLES_HEADER,
            &table,
        )?;
    }
    write!(
        out,
        "{}",
        render_table(&report::COUNTEREXAMPLES_HEADER, &table)
    )?;
    let coprime = rows.iter().filter(|r| r.pairwise_coprime).count();
    writeln!(
        out,
        "{} failing triples ({coprime} pairwise coprime)",
        rows.len()
    )?;
    Ok(())
}

fn subquadratic(args: PrimeArgs, out: &mut dyn Write) -> Result<()> {
    let eps = parse_f64_list(&args.eps)?;
    let rows = build_table(args.primes, args.c_const, &eps)?;
    let dir = prepare_out(&args.out)?;
    if let Some(d) = dir {
        let e = prime_echo(&args);
        report::write_csv(
            &d.join("subquadratic.csv"),
            &e,
            &report::SUBQUADRATIC_HEADER,
            &report::subquadratic_rows(&rows),
        )?;
    }
    let shown: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.p.to_string(),
                r.epsilon.to_string(),
                r.frobenius.to_string(),
                format!("{:.2}", r.test_bound),
                bool_word(r.violated),
            ]
        })
        .collect();
    write!(
        out,
        "{}",
        render_table(&["p", "epsilon", "F(p,p+1)", "bound", "F > bound"], &shown)
    )?;
    Ok(())
}

fn ratio(args: PrimeArgs, out: &mut dyn Write) -> Result<()> {
    let eps = parse_f64_list(&args.eps)?;
    let points = ratio_series(args.primes, args.c_const, &eps)?;
    let dir = prepare_out(&args.out)?;
    if let Some(d) = dir {
        let e = prime_echo(&args);
        report::write_csv(
            &d.join("ratios_primes.csv"),
            &e,
            &report::PRIME_RATIOS_HEADER,
            &report::prime_ratio_rows(&points),
        )?;
    }
    let shown: Vec<Vec<String>> = points
        .iter()
        .map(|p| {
            vec![
                p.p.to_string(),
                p.epsilon.to_string(),
                format!("{:.4}", p.ratio),
            ]
        })
        .collect();
    write!(out, "{}", render_table(&["p", "epsilon", "ratio"], &shown))?;
    for e in &eps {
        let first =
            first_violation(&points, *e).map_or_else(|| "none".to_string(), |p| p.to_string());
        writeln!(out, "epsilon {e}: first ratio > 1 at p = {first}")?;
    }
    Ok(())
}

fn prime_echo(args: &PrimeArgs) -> Echo {
    echo(&[
        ("c", args.c_const.to_string()),
        ("eps", args.eps.clone()),
        ("primes", args.primes.to_string()),
    ])
}
