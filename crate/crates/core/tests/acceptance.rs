//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every tolerance below is fixed here, not tuned per run.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use frobenius::bounds::{ln_c_of_n, ln_c_of_n_stirling, selmer_value, BoundKind};
use frobenius::counterexamples::{search_selmer_failures, verify_failure};
use frobenius::frobenius::{frobenius_bruteforce, frobenius_exact, frobenius_sylvester};
use frobenius::montecarlo::{run_sweep, selmer_violations, summarize};
use frobenius::sampling::{trial_rng, uniform_inclusive, SamplerConfig};
use frobenius::subquadratic::{build_table, first_violation, ratio_series};
use frobenius::vectors::{gcd, make_coin_vector, ConditionKind};

/// Seed used by every seeded criterion.
const SEED: u64 = 42;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(
        elapsed < limit,
        format!("{what} took {elapsed:?}, limit {limit:?}"),
    )
}

fn frob_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_frob"))
}

fn witness_8_32_59() -> Outcome {
    let out = frob_bin()
        .args(["compute", "--vector", "8,32,59"])
        .output()
        .map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), format!("exit status {}", out.status))?;
    ensure(
        stdout.lines().any(|l| l.trim() == "F = 405"),
        format!("stdout: {stdout}"),
    )?;

    let v = make_coin_vector(&[8, 32, 59]).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let f = frobenius_exact(&v).map_err(|e| e.to_string())?.value;
    let elapsed = start.elapsed();
    ensure(f == 405, format!("F = {f}"))?;
    let s = selmer_value(&v).map_err(|e| e.to_string())?;
    ensure(s == 228, format!("Selmer = {s}"))?;
    let row = verify_failure(&v).map_err(|e| e.to_string())?;
    ensure(row.fails, "verify_failure did not flag the failure")?;
    within(elapsed, Duration::from_millis(1), "exact solve")?;
    Ok(format!("F = 405, Selmer = 228, fails, solve {elapsed:?}"))
}

/// Reference triples on which the Selmer formula fails: (a, F, Selmer).
const KNOWN_FAILURES: [([u64; 3], i64, i64); 42] = [
    ([4, 12, 25], 71, 46),
    ([4, 24, 31], 89, 58),
    ([4, 32, 57], 167, 110),
    ([4, 39, 52], 113, 100),
    ([4, 43, 44], 125, 84),
    ([4, 44, 45], 131, 86),
    ([5, 7, 12], 23, 19),
    ([5, 10, 33], 127, 61),
    ([5, 13, 20], 47, 35),
    ([5, 15, 31], 119, 57),
    ([5, 16, 20], 59, 35),
    ([5, 24, 34], 91, 63),
    ([5, 28, 50], 107, 95),
    ([5, 30, 39], 151, 73),
    ([5, 30, 41], 159, 77),
    ([5, 31, 50], 119, 95),
    ([5, 32, 37], 123, 69),
    ([5, 34, 39], 131, 73),
    ([5, 37, 40], 143, 75),
    ([5, 38, 58], 147, 111),
    ([5, 45, 53], 207, 101),
    ([5, 46, 51], 179, 97),
    ([5, 47, 55], 183, 105),
    ([5, 48, 58], 187, 111),
    ([6, 18, 47], 229, 182),
    ([6, 29, 30], 139, 114),
    ([7, 14, 44], 257, 169),
    ([7, 21, 22], 125, 81),
    ([7, 21, 50], 293, 193),
    ([7, 37, 44], 215, 169),
    ([7, 42, 57], 335, 221),
    ([7, 42, 60], 353, 233),
    ([7, 48, 55], 281, 213),
    ([7, 51, 58], 299, 225),
    ([8, 16, 55], 377, 212),
    ([8, 23, 40], 153, 152),
    ([8, 24, 31], 209, 116),
    ([8, 24, 41], 279, 156),
    ([8, 24, 49], 335, 188),
    ([8, 31, 40], 209, 152),
    ([8, 32, 59], 405, 228),
    ([8, 39, 48], 265, 184),
];

fn known_failures_found() -> Outcome {
    let start = Instant::now();
    let rows = search_selmer_failures(&[4, 5, 6, 7, 8], 60).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let found: HashSet<(Vec<u64>, i64, i64)> = rows
        .iter()
        .map(|r| (r.vector.entries().to_vec(), r.frobenius, r.selmer_value))
        .collect();
    let missing: Vec<_> = KNOWN_FAILURES
        .iter()
        .filter(|(a, f, s)| !found.contains(&(a.to_vec(), *f, *s)))
        .collect();
    ensure(
        missing.is_empty(),
        format!("missing or mismatched rows: {missing:?}"),
    )?;
    within(elapsed, Duration::from_secs(10), "search")?;
    Ok(format!(
        "42/42 reference rows found among {} failing triples in {elapsed:?}",
        rows.len()
    ))
}

/// Reference values for C = 1: (p, [(bound, violated); 3]) at eps = 0.005, 0.01, 0.02.
const SMALL_EPS: [(u64, [(f64, bool); 3]); 17] = [
    (2, [(5.95, false), (5.89, false), (5.79, false)]),
    (3, [(11.85, false), (11.71, false), (11.42, false)]),
    (5, [(29.49, false), (29.00, false), (28.03, false)]),
    (7, [(54.88, false), (53.79, false), (51.67, false)]),
    (11, [(128.82, false), (125.71, false), (119.72, false)]),
    (13, [(177.33, false), (172.77, false), (164.01, false)]),
    (17, [(297.37, false), (288.98, false), (272.90, false)]),
    (19, [(368.88, false), (358.08, false), (337.43, true)]),
    (23, [(534.85, false), (518.23, false), (486.52, true)]),
    (29, [(841.05, false), (813.06, false), (759.85, true)]),
    (31, [(958.36, false), (925.86, true), (864.13, true)]),
    (37, [(1355.96, false), (1307.69, true), (1216.26, true)]),
    (41, [(1659.03, false), (1598.35, true), (1483.59, true)]),
    (43, [(1821.95, false), (1754.49, true), (1626.98, true)]),
    (47, [(2170.56, false), (2088.36, true), (1933.18, true)]),
    (53, [(2750.34, true), (2643.04, true), (2440.82, true)]),
    (59, [(3398.27, true), (3262.22, true), (3006.24, true)]),
];

/// Same layout for eps = 0.05, 0.1, 0.2.
const LARGE_EPS: [(u64, [(f64, bool); 3]); 6] = [
    (2, [(5.49, false), (5.02, false), (4.19, false)]),
    (3, [(10.60, false), (9.36, false), (7.30, false)]),
    (5, [(25.31, false), (21.35, false), (15.19, true)]),
    (7, [(45.79, false), (37.44, true), (25.04, true)]),
    (11, [(103.41, true), (81.01, true), (49.71, true)]),
    (13, [(140.30, true), (108.16, true), (64.28, true)]),
];

fn check_table(
    limit: u64,
    eps: [f64; 3],
    expected: &[(u64, [(f64, bool); 3])],
) -> Result<usize, String> {
    let rows = build_table(limit, 1.0, &eps).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (col, &e) in eps.iter().enumerate() {
        let got: Vec<_> = rows.iter().filter(|r| r.epsilon == e).collect();
        ensure(
            got.len() == expected.len(),
            format!("eps {e}: {} rows", got.len()),
        )?;
        for (row, &(p, cells)) in got.iter().zip(expected) {
            let (bound, flag) = cells[col];
            ensure(row.p == p, format!("eps {e}: prime {} vs {p}", row.p))?;
            ensure(
                row.frobenius == (p * p - p - 1) as i64,
                format!("F({p}, {})", p + 1),
            )?;
            ensure(
                (row.test_bound - bound).abs() <= 0.01,
                format!("p={p} eps={e}: bound {:.4} vs {bound}", row.test_bound),
            )?;
            ensure(
                row.violated == flag,
                format!("p={p} eps={e}: flag {} vs {flag}", row.violated),
            )?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn subquadratic_tables() -> Outcome {
    let start = Instant::now();
    let a = check_table(59, [0.005, 0.01, 0.02], &SMALL_EPS)?;
    let b = check_table(13, [0.05, 0.1, 0.2], &LARGE_EPS)?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1), "tables")?;
    Ok(format!(
        "{} cells within ±0.01, flags exact, {elapsed:?}",
        a + b
    ))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = trial_rng(SEED, 1);
    let mut checked = 0;
    while checked < 1000 {
        let n = uniform_inclusive(&mut rng, 2, 5) as usize;
        let raw: Vec<u64> = (0..n).map(|_| uniform_inclusive(&mut rng, 1, 30)).collect();
        let Ok(v) = make_coin_vector(&raw) else {
            continue;
        };
        let exact = frobenius_exact(&v).map_err(|e| e.to_string())?.value;
        let brute = frobenius_bruteforce(&v).map_err(|e| e.to_string())?;
        ensure(
            exact == brute,
            format!("{v}: exact {exact} vs brute force {brute}"),
        )?;
        checked += 1;
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30), "oracle sweep")?;
    Ok(format!("1000 vectors agree, {elapsed:?}"))
}

fn sylvester_consistency() -> Outcome {
    let mut rng = trial_rng(SEED, 2);
    let mut checked = 0;
    while checked < 1000 {
        let a = uniform_inclusive(&mut rng, 1, 10_000);
        let b = uniform_inclusive(&mut rng, 1, 10_000);
        if gcd(a, b) != 1 {
            continue;
        }
        let v = make_coin_vector(&[a, b]).map_err(|e| e.to_string())?;
        let exact = frobenius_exact(&v).map_err(|e| e.to_string())?.value;
        let closed = frobenius_sylvester(a, b).map_err(|e| e.to_string())?;
        ensure(exact == closed, format!("({a},{b}): {exact} vs {closed}"))?;
        checked += 1;
    }
    Ok("1000 coprime pairs agree".into())
}

fn bound_validity() -> Outcome {
    let mut notes = Vec::new();
    for (regime, dims, kinds) in [
        (
            ConditionKind::GcdOne,
            [3usize, 5, 8],
            &BoundKind::GCD_ONE[..],
        ),
        (
            ConditionKind::PairwiseCoprime,
            [3, 5, 8],
            &[BoundKind::Beck, BoundKind::WHCorr, BoundKind::WHMinSyl][..],
        ),
    ] {
        let template = SamplerConfig::new(3, 1000, regime, SEED);
        let records = run_sweep(&template, &dims, None, 1000).map_err(|e| e.to_string())?;
        for r in &records {
            for &k in kinds {
                if k == BoundKind::Vitek && r.n < 3 {
                    continue;
                }
                let b = r
                    .bound(k)
                    .ok_or_else(|| format!("{k} missing on {}", r.vector))?;
                ensure(
                    b.at_least(r.frobenius),
                    format!("{k} = {b} below F = {} on {}", r.frobenius, r.vector),
                )?;
            }
        }
        if regime == ConditionKind::PairwiseCoprime {
            notes.push(format!(
                "selmer violations counted: {}",
                selmer_violations(&records)
            ));
        }
        notes.push(format!("{regime}: {} samples valid", records.len()));
    }
    Ok(notes.join("; "))
}

fn first_crossing_prime() -> Outcome {
    let pts = ratio_series(59, 1.0, &[0.05]).map_err(|e| e.to_string())?;
    let a = first_violation(&pts, 0.05);
    ensure(a == Some(11), format!("C=1 eps=0.05 first crossing {a:?}"))?;
    let pts = ratio_series(59, 2.0, &[0.2]).map_err(|e| e.to_string())?;
    let b = first_violation(&pts, 0.2);
    ensure(b == Some(11), format!("C=2 eps=0.2 first crossing {b:?}"))?;
    Ok("first ratio > 1 at p = 11 for (C=1, 0.05) and (C=2, 0.2)".into())
}

fn qualitative_pairwise() -> Outcome {
    // Same path as `frob simulate --n 3 --k 3 --m 10000 --trials 1000 --regime coprime`.
    let template = SamplerConfig::new(3, 10_000, ConditionKind::PairwiseCoprime, SEED);
    let records = run_sweep(&template, &[3], Some(3), 1000).map_err(|e| e.to_string())?;
    let tighter = records
        .iter()
        .filter(|r| {
            let w = r.bound(BoundKind::WHCorr).unwrap().as_f64();
            let b = r.bound(BoundKind::Beck).unwrap().as_f64();
            w <= b
        })
        .count();
    let share = tighter as f64 / records.len() as f64;
    ensure(
        share >= 0.99,
        format!("WHCorr <= Beck in {share:.3} of trials"),
    )?;

    let median = |k: BoundKind| {
        summarize(&records, k)
            .map(|s| s.median)
            .map_err(|e| e.to_string())
    };
    let target = median(BoundKind::WHMinSyl)?;
    for k in BoundKind::ALL {
        if k == BoundKind::WHMinSyl || records.iter().all(|r| r.bound(k).is_none()) {
            continue;
        }
        let m = median(k)?;
        ensure(
            target <= m,
            format!("median diff whminsyl {target} > {k} {m}"),
        )?;
    }
    Ok(format!(
        "seed {SEED}: WHCorr <= Beck in {share:.3}; whminsyl median diff {target} is lowest"
    ))
}

fn stirling() -> Outcome {
    let err = (ln_c_of_n(41) - ln_c_of_n_stirling(41)).exp() - 1.0;
    ensure(err.abs() <= 0.02, format!("|ratio - 1| = {err}"))?;
    Ok(format!("|C(41)/C_stirling(41) - 1| = {:.5}", err.abs()))
}

fn determinism() -> Outcome {
    let base = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str, threads: Option<&str>| -> Result<std::path::PathBuf, String> {
        let dir = base.path().join(name);
        let mut cmd = frob_bin();
        if let Some(t) = threads {
            cmd.args(["--threads", t]);
        }
        let out = cmd
            .args(["simulate", "--n", "3:5", "--m", "500", "--trials", "300"])
            .args(["--regime", "coprime", "--seed", "7", "--out"])
            .arg(&dir)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(
            out.status.success(),
            format!("simulate exited with {}", out.status),
        )?;
        Ok(dir)
    };
    let a = run("a", None)?;
    let b = run("b", None)?;
    let one = run("one", Some("1"))?;
    let eight = run("eight", Some("8"))?;
    for file in ["trials.csv", "summary.csv", "ratios.csv"] {
        let read = |d: &std::path::Path| std::fs::read(d.join(file)).map_err(|e| e.to_string());
        let reference = read(&a)?;
        ensure(!reference.is_empty(), format!("{file} is empty"))?;
        ensure(
            read(&b)? == reference,
            format!("{file} differs between identical runs"),
        )?;
        ensure(
            read(&one)? == read(&eight)?,
            format!("{file} differs between 1 and 8 threads"),
        )?;
    }
    Ok("trials/summary/ratios byte-identical across reruns and thread counts".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("witness (8,32,59)", witness_8_32_59),
        ("known Selmer failures", known_failures_found),
        ("sub-quadratic tables", subquadratic_tables),
        ("exact vs brute-force oracle", oracle_equivalence),
        ("Sylvester consistency", sylvester_consistency),
        ("bound validity", bound_validity),
        ("first violating prime", first_crossing_prime),
        ("pairwise-coprime qualitative", qualitative_pairwise),
        ("Stirling check", stirling),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
