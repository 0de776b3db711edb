//! Seeded comparison experiments: one exact Frobenius number and every bound
//! per sampled vector, then per-bound error statistics.

use rayon::prelude::*;

use crate::bounds::{evaluate, BoundKind, BoundValue};
use crate::error::{Error, Result};
use crate::frobenius::frobenius_exact;
use crate::sampling::{derive_trial_seed, sample_vector, SamplerConfig};
use crate::vectors::CoinVector;

/// One sampled vector with its Frobenius number and bound values.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub n: usize,
    pub vector: CoinVector,
    pub frobenius: i64,
    /// Indexed by [`BoundKind::index`]; `None` where the bound does not apply.
    pub bounds: [Option<BoundValue>; 8],
    pub ratio_an_a1: f64,
    pub best_kind: BoundKind,
    pub best_tie: bool,
}

impl TrialRecord {
    /// Evaluates every bound the regime reports and classifies the tightest.
    pub fn evaluate(trial_index: u64, vector: CoinVector, cfg: &SamplerConfig) -> Result<Self> {
        let frobenius = frobenius_exact(&vector)?.value;
        let mut bounds = [None; 8];
        for &kind in BoundKind::for_regime(cfg.condition) {
            bounds[kind.index()] = evaluate(&vector, kind)?.applicable_value();
        }
        let diffs: Vec<(BoundKind, f64)> = BoundKind::contenders(cfg.condition)
            .iter()
            .filter_map(|&k| bounds[k.index()].map(|b| (k, b.minus(frobenius))))
            .collect();
        let (best_kind, best_tie) = classify_diffs(&diffs)?;
        Ok(TrialRecord {
            trial_index,
            n: vector.dim(),
            ratio_an_a1: vector.last() as f64 / vector.first() as f64,
            vector,
            frobenius,
            bounds,
            best_kind,
            best_tie,
        })
    }

    pub fn bound(&self, kind: BoundKind) -> Option<BoundValue> {
        self.bounds[kind.index()]
    }

    /// `bound - F`, where the bound applies.
    pub fn diff(&self, kind: BoundKind) -> Option<f64> {
        self.bound(kind).map(|b| b.minus(self.frobenius))
    }
}

/// Master seed for dimension `n` of a multi-dimension sweep.
pub fn dimension_seed(master_seed: u64, n: usize) -> u64 {
    derive_trial_seed(master_seed, n as u64)
}

/// Runs `trials` independent trials on the current rayon pool. Records come
/// back in trial order whatever the number of workers.
pub fn run_experiment(cfg: &SamplerConfig, trials: u64) -> Result<Vec<TrialRecord>> {
    if trials == 0 {
        return Err(Error::Validation("trials must be at least 1".into()));
    }
    cfg.validate()?;
    (0..trials)
        .into_par_iter()
        .map(|t| TrialRecord::evaluate(t, sample_vector(cfg, t)?, cfg))
        .collect()
}

/// One [`run_experiment`] per dimension, each with its own derived seed.
pub fn run_sweep(
    template: &SamplerConfig,
    dims: &[usize],
    k: Option<u64>,
    trials: u64,
) -> Result<Vec<TrialRecord>> {
    let mut all = Vec::new();
    for &n in dims {
        let cfg = SamplerConfig {
            n,
            k: k.unwrap_or(n as u64),
            master_seed: dimension_seed(template.master_seed, n),
            ..template.clone()
        };
        all.extend(run_experiment(&cfg, trials)?);
    }
    Ok(all)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub count: usize,
    pub mean: f64,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Quantile by linear interpolation between order statistics (type 7):
/// `h = (N-1) p`, `Q = x[⌊h⌋] + (h - ⌊h⌋)(x[⌊h⌋+1] - x[⌊h⌋])`.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty());
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn summarize_values(values: &[f64]) -> Result<SummaryStats> {
    if values.is_empty() {
        return Err(Error::Empty("no applicable records to summarize".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(SummaryStats {
        count: sorted.len(),
        mean: values.iter().sum::<f64>() / values.len() as f64,
        min: sorted[0],
        q1: quantile_sorted(&sorted, 0.25),
        median: quantile_sorted(&sorted, 0.5),
        q3: quantile_sorted(&sorted, 0.75),
        max: sorted[sorted.len() - 1],
    })
}

/// Statistics of `bound - F` over the records where `kind` applies.
pub fn summarize(records: &[TrialRecord], kind: BoundKind) -> Result<SummaryStats> {
    let diffs: Vec<f64> = records.iter().filter_map(|r| r.diff(kind)).collect();
    summarize_values(&diffs)
        .map_err(|_| Error::Empty(format!("bound `{kind}` applies to none of the records")))
}

/// Smallest diff wins; ties go to the earliest kind in `diffs`.
pub fn classify_diffs(diffs: &[(BoundKind, f64)]) -> Result<(BoundKind, bool)> {
    let (best_kind, best) = diffs
        .iter()
        .copied()
        .reduce(|acc, cur| if cur.1 < acc.1 { cur } else { acc })
        .ok_or_else(|| Error::Empty("no applicable bound to classify".into()))?;
    let tie = diffs.iter().any(|&(k, d)| k != best_kind && d == best);
    Ok((best_kind, tie))
}

/// Tightest applicable bound among `kinds`, taken in tie-break order.
pub fn classify_best(record: &TrialRecord, kinds: &[BoundKind]) -> Result<(BoundKind, bool)> {
    let diffs: Vec<(BoundKind, f64)> = kinds
        .iter()
        .filter_map(|&k| record.diff(k).map(|d| (k, d)))
        .collect();
    classify_diffs(&diffs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRecord {
    pub trial_index: u64,
    pub r_n: f64,
    /// Selmer fell below `F`, so the denominator is negative.
    pub negative_denominator: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RatioOutcome {
    Value(RatioRecord),
    /// Selmer equals `F`; the ratio is undefined.
    ZeroDenominator,
}

/// `R_n = (WHCorr - F) / (Selmer - F)` from raw values.
pub fn ratio_from_values(
    trial_index: u64,
    frobenius: i64,
    whcorr: f64,
    selmer: i64,
) -> RatioOutcome {
    let denom = selmer - frobenius;
    if denom == 0 {
        return RatioOutcome::ZeroDenominator;
    }
    RatioOutcome::Value(RatioRecord {
        trial_index,
        r_n: (whcorr - frobenius as f64) / denom as f64,
        negative_denominator: denom < 0,
    })
}

pub fn ratio_whcorr_selmer(record: &TrialRecord) -> Result<RatioOutcome> {
    let whcorr = record.bound(BoundKind::WHCorr);
    let selmer = record.bound(BoundKind::Selmer);
    match (whcorr, selmer) {
        (Some(w), Some(BoundValue::Integer(s))) => Ok(ratio_from_values(
            record.trial_index,
            record.frobenius,
            w.as_f64(),
            s,
        )),
        _ => Err(Error::Inapplicable(
            "R_n needs both the WHCorr and Selmer bounds".into(),
        )),
    }
}

/// `(bound - F) / F`; `None` if the bound does not apply or `F <= 0`.
pub fn relative_error(record: &TrialRecord, kind: BoundKind) -> Option<f64> {
    if record.frobenius <= 0 {
        return None;
    }
    record.diff(kind).map(|d| d / record.frobenius as f64)
}

/// Records on which Selmer applies but falls below `F`.
pub fn selmer_violations(records: &[TrialRecord]) -> usize {
    records
        .iter()
        .filter(|r| {
            r.bound(BoundKind::Selmer)
                .is_some_and(|b| !b.at_least(r.frobenius))
        })
        .count()
}
