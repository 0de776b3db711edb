//! Exact Frobenius numbers.
//!
//! Three routes are provided:
//!
//! * [`frobenius_sylvester`]: the closed form `a_1 a_2 - a_1 - a_2` for two
//!   coprime generators.
//! * [`frobenius_exact`]: shortest paths over the residue classes modulo
//!   `a_1`. Node `l` is joined to `(l + a_i) mod a_1` with weight `a_i`
//!   (`i >= 2`); the distance to `l` is the smallest representable integer
//!   congruent to `l`, and the Frobenius number is the largest such minimum
//!   minus `a_1`. Runs in `O(a_1 n log a_1)`.
//! * [`frobenius_bruteforce`]: a dense representability sweep, used only as an
//!   oracle for the other two.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::vectors::{gcd, CoinVector};

/// Largest representability table the brute-force oracle will allocate.
pub const BRUTEFORCE_BUDGET: u64 = 50_000_000;

/// The Frobenius number together with its residue-class witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusResult {
    /// `F(a)`; `-1` when every nonnegative integer is representable.
    pub value: i64,
    /// Slot `l` holds the smallest representable integer `≡ l (mod a_1)`.
    pub residue_minima: Vec<u64>,
}

impl FrobeniusResult {
    pub fn modulus(&self) -> u64 {
        self.residue_minima.len() as u64
    }

    /// `b` is representable iff it is at least the minimum of its class.
    pub fn is_representable(&self, b: u64) -> bool {
        let m = self.modulus();
        b >= self.residue_minima[(b % m) as usize]
    }
}

/// Closed form for two coprime generators.
pub fn frobenius_sylvester(a1: u64, a2: u64) -> Result<i64> {
    if a1 == 0 || a2 == 0 {
        return Err(Error::Validation("entries must be positive".into()));
    }
    let g = gcd(a1, a2);
    if g != 1 {
        return Err(Error::NotPrimitive(g));
    }
    let prod = i128::from(a1) * i128::from(a2);
    let f = prod - i128::from(a1) - i128::from(a2);
    i64::try_from(f).map_err(|_| Error::Overflow("Sylvester formula"))
}

/// Exact Frobenius number via Dijkstra over `Z / a_1`.
pub fn frobenius_exact(v: &CoinVector) -> Result<FrobeniusResult> {
    let modulus = v.first();
    let m = usize::try_from(modulus).map_err(|_| Error::Overflow("residue table size"))?;
    let gens = &v.entries()[1..];

    let mut dist = vec![u64::MAX; m];
    dist[0] = 0;
    let mut heap = BinaryHeap::with_capacity(m);
    heap.push(Reverse((0u64, 0usize)));

    while let Some(Reverse((d, node))) = heap.pop() {
        if d > dist[node] {
            continue;
        }
        for &g in gens {
            let next = ((node as u64 + g % modulus) % modulus) as usize;
            let nd = d
                .checked_add(g)
                .ok_or(Error::Overflow("residue distances"))?;
            if nd < dist[next] {
                dist[next] = nd;
                heap.push(Reverse((nd, next)));
            }
        }
    }

    // gcd one guarantees every class is reached
    debug_assert!(dist.iter().all(|&d| d != u64::MAX));
    let max = *dist.iter().max().expect("modulus is at least 1");
    let value = i64::try_from(i128::from(max) - i128::from(modulus))
        .map_err(|_| Error::Overflow("Frobenius number"))?;
    Ok(FrobeniusResult {
        value,
        residue_minima: dist,
    })
}

/// Whether `b` is a nonnegative integral combination of the entries.
pub fn is_representable(v: &CoinVector, b: u64) -> Result<bool> {
    Ok(frobenius_exact(v)?.is_representable(b))
}

/// Dense sweep over `0..=cap` with `cap = (a_1 - 1)(a_n - 1) - 1`, beyond
/// which every integer is representable.
pub fn frobenius_bruteforce(v: &CoinVector) -> Result<i64> {
    frobenius_bruteforce_with_budget(v, BRUTEFORCE_BUDGET)
}

pub fn frobenius_bruteforce_with_budget(v: &CoinVector, budget: u64) -> Result<i64> {
    let a1 = v.first();
    let an = v.last();
    if a1 == 1 {
        return Ok(-1);
    }
    let cap = (a1 - 1)
        .checked_mul(an - 1)
        .ok_or(Error::Overflow("brute-force cap"))?
        - 1;
    let needed = cap + 1;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let len = needed as usize;
    let mut reachable = vec![false; len];
    reachable[0] = true;
    for b in 1..len {
        reachable[b] = v
            .entries()
            .iter()
            .any(|&a| (a as usize) <= b && reachable[b - a as usize]);
    }
    Ok(reachable.iter().rposition(|&r| !r).map_or(-1, |b| b as i64))
}
