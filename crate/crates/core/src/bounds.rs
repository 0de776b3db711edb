//! The eight upper bounds on the Frobenius number, plus the analytic pieces
//! of the Fukshansky–Robins constant.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::vectors::{CoinVector, ConditionKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundKind {
    ErdosGraham,
    Schur,
    Vitek,
    FukshanskyRobins,
    Selmer,
    Beck,
    WHCorr,
    WHMinSyl,
}

impl BoundKind {
    /// CSV column order.
    pub const ALL: [BoundKind; 8] = [
        BoundKind::ErdosGraham,
        BoundKind::Schur,
        BoundKind::Vitek,
        BoundKind::FukshanskyRobins,
        BoundKind::Selmer,
        BoundKind::Beck,
        BoundKind::WHCorr,
        BoundKind::WHMinSyl,
    ];

    /// Bounds valid under `gcd(a) = 1`, in tie-break order.
    pub const GCD_ONE: [BoundKind; 4] = [
        BoundKind::ErdosGraham,
        BoundKind::Schur,
        BoundKind::Vitek,
        BoundKind::FukshanskyRobins,
    ];

    /// Bounds that need pairwise coprime entries, in tie-break order.
    pub const PAIRWISE: [BoundKind; 4] = [
        BoundKind::Selmer,
        BoundKind::WHCorr,
        BoundKind::WHMinSyl,
        BoundKind::Beck,
    ];

    pub fn csv_name(self) -> &'static str {
        match self {
            BoundKind::ErdosGraham => "erdos",
            BoundKind::Schur => "schur",
            BoundKind::Vitek => "vitek",
            BoundKind::FukshanskyRobins => "fukrob",
            BoundKind::Selmer => "selmer",
            BoundKind::Beck => "beck",
            BoundKind::WHCorr => "whcorr",
            BoundKind::WHMinSyl => "whminsyl",
        }
    }

    /// The kinds reported for a regime.
    pub fn for_regime(regime: ConditionKind) -> &'static [BoundKind] {
        match regime {
            ConditionKind::GcdOne => &Self::GCD_ONE,
            ConditionKind::PairwiseCoprime => &Self::ALL,
        }
    }

    /// The kinds competing for "tightest" in a regime.
    pub fn contenders(regime: ConditionKind) -> &'static [BoundKind] {
        match regime {
            ConditionKind::GcdOne => &Self::GCD_ONE,
            ConditionKind::PairwiseCoprime => &Self::PAIRWISE,
        }
    }

    pub fn index(self) -> usize {
        Self::ALL.iter().position(|&k| k == self).unwrap()
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.csv_name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.csv_name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown bound `{s}`")))
    }
}

/// A bound value, kept exact where the formula allows it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundValue {
    Integer(i64),
    /// `halves / 2`, always with an odd numerator.
    Halves(i64),
    Real(f64),
}

impl BoundValue {
    fn from_halves(h: i64) -> Self {
        if h % 2 == 0 {
            BoundValue::Integer(h / 2)
        } else {
            BoundValue::Halves(h)
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            BoundValue::Integer(x) => x as f64,
            BoundValue::Halves(h) => h as f64 / 2.0,
            BoundValue::Real(r) => r,
        }
    }

    /// Exact `self >= f` for the rational variants.
    pub fn at_least(self, f: i64) -> bool {
        match self {
            BoundValue::Integer(x) => x >= f,
            BoundValue::Halves(h) => i128::from(h) >= 2 * i128::from(f),
            BoundValue::Real(r) => r >= f as f64,
        }
    }

    /// `self - f`.
    pub fn minus(self, f: i64) -> f64 {
        match self {
            BoundValue::Integer(x) => (i128::from(x) - i128::from(f)) as f64,
            BoundValue::Halves(h) => (i128::from(h) - 2 * i128::from(f)) as f64 / 2.0,
            BoundValue::Real(r) => r - f as f64,
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BoundValue::Integer(x) => write!(f, "{x}"),
            BoundValue::Halves(h) => {
                let sign = if h < 0 { "-" } else { "" };
                write!(f, "{sign}{}.5", h.unsigned_abs() / 2)
            }
            BoundValue::Real(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundEvaluation {
    pub kind: BoundKind,
    /// Absent when inapplicable, except for Selmer, whose formula value is
    /// always reported so failures can be inspected.
    pub value: Option<BoundValue>,
    pub applicable: bool,
    pub reason: Option<String>,
}

impl BoundEvaluation {
    fn ok(kind: BoundKind, value: BoundValue) -> Self {
        BoundEvaluation {
            kind,
            value: Some(value),
            applicable: true,
            reason: None,
        }
    }

    fn inapplicable(kind: BoundKind, reason: impl Into<String>) -> Self {
        BoundEvaluation {
            kind,
            value: None,
            applicable: false,
            reason: Some(reason.into()),
        }
    }

    /// The value, only if the bound applies.
    pub fn applicable_value(&self) -> Option<BoundValue> {
        if self.applicable {
            self.value
        } else {
            None
        }
    }
}

fn i(x: u64) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow("entry exceeds i64"))
}

fn mul(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn sub(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow(what))
}

/// `2 a_{n-1} ⌊a_n / n⌋ - a_n`.
pub fn bound_erdos_graham(v: &CoinVector) -> Result<BoundEvaluation> {
    const W: &str = "Erdos-Graham bound";
    let n = v.dim() as u64;
    let an = i(v.last())?;
    let an1 = i(v.a(v.dim() - 1))?;
    let floor = i(v.last() / n)?;
    let val = sub(mul(mul(2, an1, W)?, floor, W)?, an, W)?;
    Ok(BoundEvaluation::ok(
        BoundKind::ErdosGraham,
        BoundValue::Integer(val),
    ))
}

/// `(a_1 - 1)(a_n - 1) - 1`.
pub fn bound_schur(v: &CoinVector) -> Result<BoundEvaluation> {
    const W: &str = "Schur bound";
    let val = sub(mul(i(v.first())? - 1, i(v.last())? - 1, W)?, 1, W)?;
    Ok(BoundEvaluation::ok(
        BoundKind::Schur,
        BoundValue::Integer(val),
    ))
}

/// `(a_2 - 1)(a_n - 2) / 2 - 1`, exact; needs `n >= 3`.
pub fn bound_vitek(v: &CoinVector) -> Result<BoundEvaluation> {
    const W: &str = "Vitek bound";
    if v.dim() < 3 {
        return Ok(BoundEvaluation::inapplicable(
            BoundKind::Vitek,
            "requires n >= 3",
        ));
    }
    let halves = sub(mul(i(v.a(2))? - 1, i(v.last())? - 2, W)?, 2, W)?;
    Ok(BoundEvaluation::ok(
        BoundKind::Vitek,
        BoundValue::from_halves(halves),
    ))
}

/// `⌊C(n) S(a) + 1⌋`.
pub fn bound_fukshansky_robins(v: &CoinVector) -> Result<BoundEvaluation> {
    let n = v.dim();
    let s = s_of_a(v);
    let direct = c_of_n(n) * s + 1.0;
    let raw = if direct.is_finite() {
        direct
    } else {
        (ln_c_of_n(n) + s.ln()).exp() + 1.0
    };
    if !raw.is_finite() {
        return Ok(BoundEvaluation::inapplicable(
            BoundKind::FukshanskyRobins,
            "value exceeds representable range",
        ));
    }
    let floored = raw.floor();
    // f64 integers are exact up to 2^53
    let value = if floored < 9_007_199_254_740_992.0 {
        BoundValue::Integer(floored as i64)
    } else {
        BoundValue::Real(floored)
    };
    Ok(BoundEvaluation::ok(BoundKind::FukshanskyRobins, value))
}

/// `2 a_n ⌊a_1 / n⌋ - a_1`; only applies to pairwise coprime vectors with
/// `a_1 >= n`, but the formula value is always returned.
pub fn bound_selmer(v: &CoinVector) -> Result<BoundEvaluation> {
    let val = selmer_value(v)?;
    let value = Some(BoundValue::Integer(val));
    let reason = if !v.satisfies(ConditionKind::PairwiseCoprime) {
        Some("entries are not pairwise coprime")
    } else if v.first() < v.dim() as u64 {
        Some("requires a_1 >= n")
    } else {
        None
    };
    Ok(BoundEvaluation {
        kind: BoundKind::Selmer,
        value,
        applicable: reason.is_none(),
        reason: reason.map(String::from),
    })
}

/// The raw Selmer formula value, with no applicability check.
pub fn selmer_value(v: &CoinVector) -> Result<i64> {
    const W: &str = "Selmer bound";
    let floor = i(v.first() / v.dim() as u64)?;
    sub(mul(mul(2, i(v.last())?, W)?, floor, W)?, i(v.first())?, W)
}

/// The three smallest entries, if they are pairwise coprime.
fn leading_triple(
    v: &CoinVector,
    kind: BoundKind,
) -> std::result::Result<[u64; 3], BoundEvaluation> {
    if v.dim() < 3 {
        return Err(BoundEvaluation::inapplicable(kind, "requires n >= 3"));
    }
    let t = [v.a(1), v.a(2), v.a(3)];
    let coprime = crate::vectors::gcd(t[0], t[1]) == 1
        && crate::vectors::gcd(t[0], t[2]) == 1
        && crate::vectors::gcd(t[1], t[2]) == 1;
    if !coprime {
        return Err(BoundEvaluation::inapplicable(
            kind,
            "a_1, a_2, a_3 are not pairwise coprime",
        ));
    }
    Ok(t)
}

/// `½(√(a_1 a_2 a_3 (a_1 + a_2 + a_3)) - a_1 - a_2 - a_3)` on the three
/// smallest entries. Adding generators never raises `F`, so for `n > 3`
/// this still bounds the whole vector.
pub fn bound_beck(v: &CoinVector) -> Result<BoundEvaluation> {
    let [a, b, c] = match leading_triple(v, BoundKind::Beck) {
        Ok(t) => t.map(u128::from),
        Err(e) => return Ok(e),
    };
    let s = a + b + c;
    let radicand = a * b * c * s;
    let value = 0.5 * ((radicand as f64).sqrt() - s as f64);
    Ok(BoundEvaluation::ok(
        BoundKind::Beck,
        BoundValue::Real(value),
    ))
}

/// The corrected Beck-type bound,
/// `½(√(⅓ s (s + 2 a_1 a_2 a_3) + 8/3 (a_1 a_2 + a_2 a_3 + a_3 a_1)) - s)`
/// with `s = a_1 + a_2 + a_3`, on the three smallest entries.
pub fn bound_wh_corrected(v: &CoinVector) -> Result<BoundEvaluation> {
    let [a, b, c] = match leading_triple(v, BoundKind::WHCorr) {
        Ok(t) => t.map(u128::from),
        Err(e) => return Ok(e),
    };
    let s = a + b + c;
    // both terms share the denominator 3
    let numerator = s * (s + 2 * a * b * c) + 8 * (a * b + b * c + c * a);
    let value = 0.5 * ((numerator as f64 / 3.0).sqrt() - s as f64);
    Ok(BoundEvaluation::ok(
        BoundKind::WHCorr,
        BoundValue::Real(value),
    ))
}

/// `min_{i<j} (a_i - 1)(a_j - 1) - 1`; needs pairwise coprime entries.
pub fn bound_wh_min_sylvester(v: &CoinVector) -> Result<BoundEvaluation> {
    const W: &str = "min-Sylvester bound";
    if !v.satisfies(ConditionKind::PairwiseCoprime) {
        return Ok(BoundEvaluation::inapplicable(
            BoundKind::WHMinSyl,
            "entries are not pairwise coprime",
        ));
    }
    // sorted entries: the smallest pair product sits at (a_1, a_2)
    let val = sub(mul(i(v.a(1))? - 1, i(v.a(2))? - 1, W)?, 1, W)?;
    Ok(BoundEvaluation::ok(
        BoundKind::WHMinSyl,
        BoundValue::Integer(val),
    ))
}

pub fn evaluate(v: &CoinVector, kind: BoundKind) -> Result<BoundEvaluation> {
    match kind {
        BoundKind::ErdosGraham => bound_erdos_graham(v),
        BoundKind::Schur => bound_schur(v),
        BoundKind::Vitek => bound_vitek(v),
        BoundKind::FukshanskyRobins => bound_fukshansky_robins(v),
        BoundKind::Selmer => bound_selmer(v),
        BoundKind::Beck => bound_beck(v),
        BoundKind::WHCorr => bound_wh_corrected(v),
        BoundKind::WHMinSyl => bound_wh_min_sylvester(v),
    }
}

/// Every bound of the regime, inapplicable ones flagged rather than dropped.
pub fn evaluate_all(v: &CoinVector, regime: ConditionKind) -> Result<Vec<BoundEvaluation>> {
    if !v.satisfies(regime) {
        return Err(Error::RegimeMismatch(format!(
            "{v} does not satisfy the {regime} condition"
        )));
    }
    BoundKind::for_regime(regime)
        .iter()
        .map(|&k| evaluate(v, k))
        .collect()
}

/// `Γ(twice_x / 2)` from the factorial closed forms:
/// `Γ(k) = (k-1)!` and `Γ(k + ½) = (2k)! √π / (4^k k!)`.
///
/// The half-integer case is accumulated as `√π ∏_{j=1..k} (j - ½)`, which is
/// the same quantity without the intermediate factorial overflow. Returns
/// infinity once the result leaves the `f64` range; see
/// [`ln_gamma_half_integer`].
pub fn gamma_half_integer(twice_x: u64) -> Result<f64> {
    if twice_x == 0 {
        return Err(Error::Domain("gamma needs a positive argument".into()));
    }
    if twice_x.is_multiple_of(2) {
        let k = twice_x / 2;
        Ok((1..k).fold(1.0, |acc, j| acc * j as f64))
    } else {
        let k = (twice_x - 1) / 2;
        Ok((1..=k).fold(PI.sqrt(), |acc, j| acc * (j as f64 - 0.5)))
    }
}

pub fn ln_gamma_half_integer(twice_x: u64) -> Result<f64> {
    if twice_x == 0 {
        return Err(Error::Domain("gamma needs a positive argument".into()));
    }
    if twice_x.is_multiple_of(2) {
        let k = twice_x / 2;
        Ok((1..k).map(|j| (j as f64).ln()).sum())
    } else {
        let k = (twice_x - 1) / 2;
        Ok(0.5 * PI.ln() + (1..=k).map(|j| (j as f64 - 0.5).ln()).sum::<f64>())
    }
}

/// Splits `Γ((n+1)/2) / π^{(n-1)/2}` as `P / π^j` with `P` a product of
/// rationals, so the `√π` of the half-integer case cancels exactly.
fn c_factors(n: usize) -> (Vec<f64>, u32) {
    if n % 2 == 1 {
        // (n+1)/2 = m integer: (m-1)! / π^(m-1)
        let m = n.div_ceil(2);
        ((1..m).map(|j| j as f64).collect(), (m - 1) as u32)
    } else {
        // (n+1)/2 = k + ½: ∏ (j - ½) / π^(k-1)
        let k = n / 2;
        ((1..=k).map(|j| j as f64 - 0.5).collect(), (k - 1) as u32)
    }
}

/// `C(n) = (n-1)² Γ((n+1)/2) / π^{(n-1)/2}`.
pub fn c_of_n(n: usize) -> f64 {
    assert!(n >= 2, "C(n) needs n >= 2");
    let (terms, pi_power) = c_factors(n);
    let sq = ((n - 1) as f64).powi(2);
    // interleave the divisions by π to postpone overflow
    let mut acc = sq;
    let mut left = pi_power;
    for t in terms {
        acc *= t;
        if left > 0 {
            acc /= PI;
            left -= 1;
        }
    }
    (0..left).fold(acc, |a, _| a / PI)
}

/// `ln C(n)`.
pub fn ln_c_of_n(n: usize) -> f64 {
    assert!(n >= 2, "C(n) needs n >= 2");
    let (terms, pi_power) = c_factors(n);
    2.0 * ((n - 1) as f64).ln() + terms.iter().map(|t| t.ln()).sum::<f64>()
        - f64::from(pi_power) * PI.ln()
}

/// Stirling approximation of `ln C(n)`, with `x = (n-1)/2`:
/// `C(n) ~ (n-1)² √(2πx) (x/π)^x e^{-x}`.
pub fn ln_c_of_n_stirling(n: usize) -> f64 {
    assert!(n >= 2, "C(n) needs n >= 2");
    let x = (n - 1) as f64 / 2.0;
    2.0 * ((n - 1) as f64).ln() + 0.5 * (2.0 * PI * x).ln() + x * (x / PI).ln() - x
}

/// `S(a) = Σ a_i √(‖a‖₂² - a_i²)`; the radicands are exact integers.
pub fn s_of_a(v: &CoinVector) -> f64 {
    s_of_entries(v.entries())
}

/// [`s_of_a`] on a raw slice (no gcd requirement).
pub fn s_of_entries(entries: &[u64]) -> f64 {
    let total: u128 = entries.iter().map(|&x| u128::from(x) * u128::from(x)).sum();
    entries
        .iter()
        .map(|&x| {
            let rest = total - u128::from(x) * u128::from(x);
            x as f64 * (rest as f64).sqrt()
        })
        .sum()
}
