//! CSV artifacts and plain-text tables.
//!
//! Every CSV starts with `# key=value` lines echoing the configuration that
//! produced it, followed by a header row. Inapplicable cells are `NA` and
//! vectors are written as `a;b;c`.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::bounds::BoundKind;
use crate::counterexamples::FailureRow;
use crate::error::{Error, Result};
use crate::montecarlo::{ratio_whcorr_selmer, summarize, RatioOutcome, TrialRecord};
use crate::subquadratic::{RatioPoint, SubquadraticRow};
use crate::vectors::ConditionKind;

pub const NA: &str = "NA";

pub type Echo = Vec<(String, String)>;

pub const TRIALS_HEADER: [&str; 15] = [
    "trial",
    "n",
    "vector",
    "frobenius",
    "erdos",
    "schur",
    "vitek",
    "fukrob",
    "selmer",
    "beck",
    "whcorr",
    "whminsyl",
    "ratio_an_a1",
    "best",
    "best_tie",
];
pub const SUMMARY_HEADER: [&str; 9] = [
    "n", "bound", "count", "mean", "min", "q1", "median", "q3", "max",
];
pub const RATIOS_HEADER: [&str; 4] = ["trial", "n", "r_n", "flag"];
pub const COUNTEREXAMPLES_HEADER: [&str; 7] = [
    "a1",
    "a2",
    "a3",
    "frobenius",
    "selmer",
    "fails",
    "pairwise_coprime",
];
pub const SUBQUADRATIC_HEADER: [&str; 6] = ["p", "epsilon", "c", "frobenius", "bound", "violated"];
pub const PRIME_RATIOS_HEADER: [&str; 4] = ["p", "epsilon", "c", "ratio"];

/// Writes the echo block, the header and the rows. A partially written
/// file is removed on failure.
pub fn write_csv(
    path: &Path,
    echo: &[(String, String)],
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<()> {
    let result = (|| -> Result<()> {
        let mut buf = BufWriter::new(File::create(path)?);
        for (k, v) in echo {
            writeln!(buf, "# {k}={v}")?;
        }
        let mut w = csv::Writer::from_writer(buf);
        w.write_record(header)?;
        for row in rows {
            w.write_record(row)?;
        }
        w.into_inner()
            .map_err(|e| Error::Io(e.to_string()))?
            .flush()?;
        Ok(())
    })();
    if result.is_err() {
        let _ = fs::remove_file(path);
    }
    result
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| NA.to_string(), |v| v.to_string())
}

pub fn trial_rows(records: &[TrialRecord]) -> Vec<Vec<String>> {
    records
        .iter()
        .map(|r| {
            let mut row = vec![
                r.trial_index.to_string(),
                r.n.to_string(),
                r.vector.to_csv_field(),
                r.frobenius.to_string(),
            ];
            row.extend(BoundKind::ALL.iter().map(|&k| opt(r.bound(k))));
            row.push(r.ratio_an_a1.to_string());
            row.push(r.best_kind.to_string());
            row.push(r.best_tie.to_string());
            row
        })
        .collect()
}

/// Dimensions in first-seen order.
fn dimensions(records: &[TrialRecord]) -> Vec<usize> {
    let mut dims: Vec<usize> = Vec::new();
    for r in records {
        if !dims.contains(&r.n) {
            dims.push(r.n);
        }
    }
    dims
}

/// One row per `(n, bound)` with at least one applicable record.
pub fn summary_rows(records: &[TrialRecord], regime: ConditionKind) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for n in dimensions(records) {
        let subset: Vec<TrialRecord> = records.iter().filter(|r| r.n == n).cloned().collect();
        for &kind in BoundKind::for_regime(regime) {
            if let Ok(s) = summarize(&subset, kind) {
                rows.push(vec![
                    n.to_string(),
                    kind.to_string(),
                    s.count.to_string(),
                    s.mean.to_string(),
                    s.min.to_string(),
                    s.q1.to_string(),
                    s.median.to_string(),
                    s.q3.to_string(),
                    s.max.to_string(),
                ]);
            }
        }
    }
    rows
}

/// Rows for every record where both Selmer and WHCorr apply; a zero
/// denominator is written as `NA` with flag `zero_denominator`.
pub fn ratio_rows(records: &[TrialRecord]) -> Vec<Vec<String>> {
    records
        .iter()
        .filter_map(|r| {
            let outcome = ratio_whcorr_selmer(r).ok()?;
            let (value, flag) = match outcome {
                RatioOutcome::Value(v) if v.negative_denominator => {
                    (v.r_n.to_string(), "negative_denominator")
                }
                RatioOutcome::Value(v) => (v.r_n.to_string(), "ok"),
                RatioOutcome::ZeroDenominator => (NA.to_string(), "zero_denominator"),
            };
            Some(vec![
                r.trial_index.to_string(),
                r.n.to_string(),
                value,
                flag.to_string(),
            ])
        })
        .collect()
}

pub fn counterexample_rows(rows: &[FailureRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            let mut row: Vec<String> = r.vector.entries().iter().map(u64::to_string).collect();
            row.extend([
                r.frobenius.to_string(),
                r.selmer_value.to_string(),
                r.fails.to_string(),
                r.pairwise_coprime.to_string(),
            ]);
            row
        })
        .collect()
}

pub fn subquadratic_rows(rows: &[SubquadraticRow]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                r.p.to_string(),
                r.epsilon.to_string(),
                r.c_const.to_string(),
                r.frobenius.to_string(),
                r.test_bound.to_string(),
                r.violated.to_string(),
            ]
        })
        .collect()
}

pub fn prime_ratio_rows(points: &[RatioPoint]) -> Vec<Vec<String>> {
    points
        .iter()
        .map(|p| {
            vec![
                p.p.to_string(),
                p.epsilon.to_string(),
                p.c_const.to_string(),
                p.ratio.to_string(),
            ]
        })
        .collect()
}

/// Left-aligned text table with two spaces between columns.
pub fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = line(&mut header.iter().copied());
    out.push('\n');
    for row in rows {
        out.push_str(&line(&mut row.iter().map(String::as_str)));
        out.push('\n');
    }
    out
}
