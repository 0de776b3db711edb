//! Vectors on which the Selmer formula `2 a_n ⌊a_1/n⌋ - a_1` falls below
//! the Frobenius number.

use rayon::prelude::*;

use crate::bounds::selmer_value;
use crate::error::{Error, Result};
use crate::frobenius::frobenius_exact;
use crate::vectors::{gcd, CoinVector, ConditionKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureRow {
    pub vector: CoinVector,
    pub frobenius: i64,
    pub selmer_value: i64,
    /// `frobenius > selmer_value`.
    pub fails: bool,
    pub pairwise_coprime: bool,
}

/// Compares `F(v)` with the Selmer formula. Vectors outside the formula's
/// stated range (`n >= 3`, `a_1 >= n`) are reported as inapplicable.
pub fn verify_failure(v: &CoinVector) -> Result<FailureRow> {
    if v.dim() < 3 {
        return Err(Error::Inapplicable(format!(
            "{v}: Selmer check needs n >= 3"
        )));
    }
    if v.first() < v.dim() as u64 {
        return Err(Error::Inapplicable(format!(
            "{v}: Selmer check needs a_1 >= n"
        )));
    }
    let frobenius = frobenius_exact(v)?.value;
    let selmer = selmer_value(v)?;
    Ok(FailureRow {
        vector: v.clone(),
        frobenius,
        selmer_value: selmer,
        fails: frobenius > selmer,
        pairwise_coprime: v.satisfies(ConditionKind::PairwiseCoprime),
    })
}

/// All sorted triples `a_1 <= a_2 <= a_3 <= max_entry` with `a_1` drawn from
/// `a1_values` and `gcd = 1` on which Selmer fails, in lexicographic order.
pub fn search_selmer_failures(a1_values: &[u64], max_entry: u64) -> Result<Vec<FailureRow>> {
    if let Some(&bad) = a1_values.iter().find(|&&a| a < 3) {
        return Err(Error::Validation(format!("a_1 = {bad} is below n = 3")));
    }
    if let Some(&big) = a1_values.iter().max() {
        if max_entry < big {
            return Err(Error::Validation(format!(
                "max entry {max_entry} is below a_1 = {big}"
            )));
        }
    }
    let mut a1s = a1_values.to_vec();
    a1s.sort_unstable();
    a1s.dedup();

    let strata: Vec<Vec<FailureRow>> = a1s
        .par_iter()
        .map(|&a1| {
            let mut rows = Vec::new();
            for a2 in a1..=max_entry {
                let g12 = gcd(a1, a2);
                for a3 in a2..=max_entry {
                    if gcd(g12, a3) != 1 {
                        continue;
                    }
                    let row = verify_failure(&CoinVector::new(&[a1, a2, a3])?)?;
                    if row.fails {
                        rows.push(row);
                    }
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(strata.into_iter().flatten().collect())
}

/// `(a_1, a_1 k_2, ..., a_1 k_{n-1}, a_n)`: the extra entries are multiples
/// of `a_1`, so the Frobenius number stays `F(a_1, a_n)`.
pub fn embed_multiples(a1: u64, an: u64, multipliers: &[u64]) -> Result<CoinVector> {
    if gcd(a1, an) != 1 {
        return Err(Error::NotPrimitive(gcd(a1, an)));
    }
    let top = an / a1;
    let mut raw = Vec::with_capacity(multipliers.len() + 2);
    raw.push(a1);
    for &k in multipliers {
        if k == 0 || k > top {
            return Err(Error::Validation(format!(
                "multiplier {k} outside 1..={top} (a_1 k must stay below {an})"
            )));
        }
        raw.push(a1 * k);
    }
    raw.push(an);
    CoinVector::new(&raw)
}
