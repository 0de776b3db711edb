//! `F(p, p+1) = p² - p - 1` against test bounds `C (p(p+1))^{1-ε}`.
//!
//! For fixed `C` and `ε` the ratio grows like `p^{2ε}`, so every such bound
//! is eventually violated; the tables here show where.

use crate::error::{Error, Result};
use crate::frobenius::frobenius_sylvester;
use crate::vectors::CoinVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubquadraticRow {
    pub p: u64,
    pub epsilon: f64,
    pub c_const: f64,
    pub frobenius: i64,
    pub test_bound: f64,
    pub violated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioPoint {
    pub p: u64,
    pub epsilon: f64,
    pub c_const: f64,
    pub ratio: f64,
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            for j in (i * i..=n).step_by(i) {
                composite[j] = true;
            }
        }
        i += 1;
    }
    (2..=n)
        .filter(|&k| !composite[k])
        .map(|k| k as u64)
        .collect()
}

fn check_params(c_const: f64, epsilon: f64) -> Result<()> {
    if !(c_const > 0.0 && c_const.is_finite()) {
        return Err(Error::Domain(format!("C must be positive, got {c_const}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Domain(format!(
            "epsilon must lie in (0, 1), got {epsilon}; for epsilon >= 1 the test bound is \
             at most C, which F(a) exceeds trivially, so only epsilon < 1 needs checking"
        )));
    }
    Ok(())
}

/// `C (p (p+1))^{1-ε}`.
pub fn test_bound(p: u64, c_const: f64, epsilon: f64) -> Result<f64> {
    check_params(c_const, epsilon)?;
    if p < 2 {
        return Err(Error::Domain(format!("p must be at least 2, got {p}")));
    }
    let base = p as f64 * (p + 1) as f64;
    Ok(c_const * base.powf(1.0 - epsilon))
}

/// One row per `(ε, p)`, ε-major, both ascending in input order.
pub fn build_table(
    prime_limit: u64,
    c_const: f64,
    epsilons: &[f64],
) -> Result<Vec<SubquadraticRow>> {
    let primes = primes_up_to(prime_limit);
    let mut rows = Vec::with_capacity(primes.len() * epsilons.len());
    for &epsilon in epsilons {
        check_params(c_const, epsilon)?;
        for &p in &primes {
            let frobenius = frobenius_sylvester(p, p + 1)?;
            let bound = test_bound(p, c_const, epsilon)?;
            rows.push(SubquadraticRow {
                p,
                epsilon,
                c_const,
                frobenius,
                test_bound: bound,
                violated: frobenius as f64 > bound,
            });
        }
    }
    Ok(rows)
}

pub fn ratio_series(prime_limit: u64, c_const: f64, epsilons: &[f64]) -> Result<Vec<RatioPoint>> {
    Ok(build_table(prime_limit, c_const, epsilons)?
        .into_iter()
        .map(|r| RatioPoint {
            p: r.p,
            epsilon: r.epsilon,
            c_const: r.c_const,
            ratio: r.frobenius as f64 / r.test_bound,
        })
        .collect())
}

/// First prime whose ratio exceeds 1 for the given `ε`.
pub fn first_violation(points: &[RatioPoint], epsilon: f64) -> Option<u64> {
    points
        .iter()
        .find(|pt| pt.epsilon == epsilon && pt.ratio > 1.0)
        .map(|pt| pt.p)
}

/// `(p, p+1, r, ..., r)` with `n - 2` copies of `r = 2p + 1 = p + (p+1)`.
/// `r` is representable by `{p, p+1}`, so the Frobenius number stays
/// `p² - p - 1`.
pub fn pair_with_extra_entries(p: u64, n: usize) -> Result<CoinVector> {
    if n < 3 {
        return Err(Error::Validation(format!("dimension {n} is below 3")));
    }
    if p < 2 || primes_up_to(p).last() != Some(&p) {
        return Err(Error::Validation(format!("{p} is not prime")));
    }
    let r = 2 * p + 1;
    let mut raw = vec![p, p + 1];
    raw.extend(std::iter::repeat_n(r, n - 2));
    CoinVector::new(&raw)
}
