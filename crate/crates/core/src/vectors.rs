//! Coin vectors and the two coprimality conditions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Greatest common divisor of two integers (Euclid).
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Greatest common divisor of every entry.
pub fn gcd_all(entries: &[u64]) -> Result<u64> {
    if entries.is_empty() {
        return Err(Error::Validation("gcd of an empty sequence".into()));
    }
    if let Some(&bad) = entries.iter().find(|&&x| x == 0) {
        return Err(Error::Validation(format!("entry {bad} is not positive")));
    }
    Ok(entries.iter().fold(0, |g, &x| gcd(g, x)))
}

/// Which coprimality regime a vector is required to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConditionKind {
    /// `gcd(a_1, ..., a_n) = 1`.
    GcdOne,
    /// `gcd(a_i, a_j) = 1` for every `i != j`.
    PairwiseCoprime,
}

impl ConditionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConditionKind::GcdOne => "gcd",
            ConditionKind::PairwiseCoprime => "coprime",
        }
    }
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConditionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gcd" | "gcdone" | "gcd-one" => Ok(ConditionKind::GcdOne),
            "coprime" | "pairwise" | "pairwisecoprime" | "pairwise-coprime" => {
                Ok(ConditionKind::PairwiseCoprime)
            }
            other => Err(Error::Validation(format!(
                "unknown regime `{other}` (expected `gcd` or `coprime`)"
            ))),
        }
    }
}

/// A validated, sorted vector of positive integers whose gcd is one.
///
/// Duplicates are kept: the dimension is part of several bounds (`⌊a_1/n⌋`,
/// the gamma constant), so `(5, 6, 11, 11)` and `(5, 6, 11)` are different
/// inputs even though they generate the same semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoinVector {
    entries: Vec<u64>,
}

impl CoinVector {
    /// Sorts, checks `n >= 2`, positivity and `gcd = 1`.
    pub fn new(raw: &[u64]) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::Validation(format!(
                "need at least 2 entries, got {}",
                raw.len()
            )));
        }
        let g = gcd_all(raw)?;
        if g != 1 {
            return Err(Error::NotPrimitive(g));
        }
        let mut entries = raw.to_vec();
        entries.sort_unstable();
        Ok(CoinVector { entries })
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    /// Dimension `n`.
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// Smallest entry `a_1`.
    pub fn first(&self) -> u64 {
        self.entries[0]
    }

    /// Largest entry `a_n`, i.e. the max norm.
    pub fn last(&self) -> u64 {
        self.entries[self.entries.len() - 1]
    }

    /// 1-based access, matching the usual `a_i` indexing.
    pub fn a(&self, i: usize) -> u64 {
        self.entries[i - 1]
    }

    pub fn max_norm(&self) -> u64 {
        self.last()
    }

    /// Squared Euclidean norm, exact.
    pub fn norm2_squared(&self) -> u128 {
        self.entries
            .iter()
            .map(|&x| u128::from(x) * u128::from(x))
            .sum()
    }

    pub fn norm2(&self) -> f64 {
        (self.norm2_squared() as f64).sqrt()
    }

    pub fn satisfies(&self, kind: ConditionKind) -> bool {
        satisfies_condition(self, kind)
    }

    /// Returns a new vector with `extra` appended (and re-sorted).
    pub fn with_entry(&self, extra: u64) -> Result<Self> {
        let mut raw = self.entries.clone();
        raw.push(extra);
        CoinVector::new(&raw)
    }

    /// Semicolon-joined form used in CSV cells, e.g. `8;32;59`.
    pub fn to_csv_field(&self) -> String {
        join(&self.entries, ";")
    }
}

fn join(xs: &[u64], sep: &str) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for CoinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.entries, ","))
    }
}

/// Accepts `8,32,59` or `8;32;59` (whitespace ignored).
impl FromStr for CoinVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let raw = s
            .split([',', ';'])
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| Error::Validation(format!("`{t}` is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        CoinVector::new(&raw)
    }
}

pub fn make_coin_vector(raw: &[u64]) -> Result<CoinVector> {
    CoinVector::new(raw)
}

pub fn satisfies_condition(v: &CoinVector, kind: ConditionKind) -> bool {
    let e = v.entries();
    match kind {
        ConditionKind::GcdOne => e.iter().fold(0, |g, &x| gcd(g, x)) == 1,
        ConditionKind::PairwiseCoprime => e
            .iter()
            .enumerate()
            .all(|(i, &x)| e[i + 1..].iter().all(|&y| gcd(x, y) == 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_all(&[6, 10, 15]).unwrap(), 1);
        assert_eq!(gcd_all(&[4, 6]).unwrap(), 2);
        assert_eq!(gcd_all(&[8, 16, 32]).unwrap(), 8);
        assert!(gcd_all(&[]).is_err());
        assert!(gcd_all(&[0, 3]).is_err());
    }

    #[test]
    fn conditions() {
        let v = make_coin_vector(&[6, 10, 15]).unwrap();
        assert!(satisfies_condition(&v, ConditionKind::GcdOne));
        assert!(!satisfies_condition(&v, ConditionKind::PairwiseCoprime));
        let v = make_coin_vector(&[2, 3]).unwrap();
        assert!(satisfies_condition(&v, ConditionKind::PairwiseCoprime));
        let v = make_coin_vector(&[3, 5, 7]).unwrap();
        assert!(satisfies_condition(&v, ConditionKind::PairwiseCoprime));
    }

    #[test]
    fn construction() {
        assert_eq!(
            make_coin_vector(&[59, 8, 32]).unwrap().entries(),
            &[8, 32, 59]
        );
        assert_eq!(make_coin_vector(&[4, 6]), Err(Error::NotPrimitive(2)));
        assert_eq!(
            make_coin_vector(&[5, 6, 11, 11]).unwrap().entries(),
            &[5, 6, 11, 11]
        );
        assert!(matches!(make_coin_vector(&[7]), Err(Error::Validation(_))));
        assert!(matches!(
            make_coin_vector(&[0, 1]),
            Err(Error::Validation(_))
        ));
        // a single 1 is enough for gcd one
        assert!(make_coin_vector(&[1, 4]).is_ok());
    }

    #[test]
    fn parse_and_display() {
        let v: CoinVector = "59, 8,32".parse().unwrap();
        assert_eq!(v.to_csv_field(), "8;32;59");
        assert_eq!(v.to_string(), "(8,32,59)");
        let w: CoinVector = v.to_csv_field().parse().unwrap();
        assert_eq!(v, w);
        assert!("8,x".parse::<CoinVector>().is_err());
        assert!("-3,5".parse::<CoinVector>().is_err());
    }

    #[test]
    fn norms() {
        let v = make_coin_vector(&[3, 4]).unwrap();
        assert_eq!(v.norm2_squared(), 25);
        assert_eq!(v.norm2(), 5.0);
        assert_eq!(v.max_norm(), 4);
        assert_eq!(v.a(1), 3);
    }

    fn primitive_vec() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(1u64..200, 2..7)
            .prop_filter("gcd one", |v| v.iter().fold(0, |g, &x| gcd(g, x)) == 1)
    }

    proptest! {
        #[test]
        fn pairwise_implies_gcd_one(raw in primitive_vec()) {
            let v = make_coin_vector(&raw).unwrap();
            if v.satisfies(ConditionKind::PairwiseCoprime) {
                prop_assert!(v.satisfies(ConditionKind::GcdOne));
            }
        }

        #[test]
        fn conditions_agree_in_dimension_two(a in 1u64..500, b in 1u64..500) {
            prop_assume!(gcd(a, b) == 1);
            let v = make_coin_vector(&[a, b]).unwrap();
            prop_assert_eq!(
                v.satisfies(ConditionKind::GcdOne),
                v.satisfies(ConditionKind::PairwiseCoprime)
            );
        }

        #[test]
        fn construction_is_idempotent(raw in primitive_vec()) {
            let v = make_coin_vector(&raw).unwrap();
            let w = make_coin_vector(v.entries()).unwrap();
            prop_assert_eq!(v, w);
        }
    }
}
