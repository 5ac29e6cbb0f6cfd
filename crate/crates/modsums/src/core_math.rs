//! Exact formulas and distribution kernels: mod-q binomial coefficients,
//! the middle-window bounds, and the O(n·q) subset-sum counting kernels.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config::{Configuration, ResidueSet};
use crate::error::{Error, Result};

/// Exact count, per residue class mod q, of assignments whose sum lands
/// in that class. `counts[s]` is an arbitrary-precision integer; the
/// counts always total `2^n` for the configuration that produced them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumDistribution {
    q: u32,
    counts: Vec<BigUint>,
}

impl SumDistribution {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// Binomial coefficient C(n, j); zero when j is out of range.
pub fn binom(n: u32, j: i64) -> BigUint {
    if j < 0 || j > n as i64 {
        return BigUint::zero();
    }
    let j = (j as u64).min(n as u64 - j as u64);
    let mut acc = BigUint::one();
    for i in 0..j {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    acc
}

/// Mod-q binomial coefficient `C(n, s)_q = Σ_{j ≡ s (mod q)} C(n, j)`.
pub fn mod_binomial(n: u32, s: i64, q: u32) -> Result<BigUint> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    let s = s.rem_euclid(q as i64) as u64;
    // Walk the Pascal row once, keeping C(n, j) incrementally.
    let mut acc = BigUint::zero();
    let mut row = BigUint::one();
    for j in 0..=n as u64 {
        if j % q as u64 == s {
            acc += &row;
        }
        if j < n as u64 {
            row = row * (n as u64 - j) / (j + 1);
        }
    }
    Ok(acc)
}

/// The k consecutive integers j with (n−k)/2 ≤ j < (n+k)/2, i.e.
/// lo = ⌈(n−k)/2⌉ and hi = lo + k − 1. The window may extend below 0
/// or above n when k > n.
pub fn middle_window(n: u32, k: u32) -> (i64, i64) {
    let lo = ceil_half(n as i64 - k as i64);
    (lo, lo + k as i64 - 1)
}

fn ceil_half(x: i64) -> i64 {
    (x + 1).div_euclid(2)
}

/// Maximum number of the 2^n subset sums landing in any k residue
/// classes: the sum of the k middle mod-q binomial coefficients.
pub fn theorem1_bound(n: u32, k: u32, q: u32) -> Result<BigUint> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    if k < 1 || k > q {
        return Err(Error::InvalidK { k, q });
    }
    let (lo, hi) = middle_window(n, k);
    let mut acc = BigUint::zero();
    for j in lo..=hi {
        acc += mod_binomial(n, j, q)?;
    }
    Ok(acc)
}

/// Minimum number of subset sums in any single residue class, valid for
/// n ≥ q − 1: the mod-q binomial at ⌈(n−q)/2⌉.
pub fn corollary2_bound(n: u32, q: u32) -> Result<BigUint> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    if (n as i64) < q as i64 - 1 {
        return Err(Error::BelowCorollary2Range { n, limit: q - 1 });
    }
    mod_binomial(n, ceil_half(n as i64 - q as i64), q)
}

/// Maximum number of the 2^n signed sums (δ_i ∈ {±1}) in any k residue
/// classes mod q. Reduces to the subset problem at modulus r, where r
/// is q for odd q and q/2 for even q; k saturates at r because at most
/// r classes carry any signed sums.
pub fn corollary3_bound(n: u32, k: u32, q: u32) -> Result<BigUint> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    if k < 1 || k > q {
        return Err(Error::InvalidK { k, q });
    }
    let r = if q % 2 == 1 { q } else { q / 2 };
    theorem1_bound(n, k.min(r), r)
}

/// Counts the 0/1 assignments by residue class of their sum, via
/// iterated cyclic convolution with (1 + x^{a_i}) mod (x^q − 1).
/// O(n·q) big-integer additions, exact.
pub fn subset_sum_distribution(c: &Configuration) -> SumDistribution {
    let q = c.q() as usize;
    let mut counts = vec![BigUint::zero(); q];
    counts[0] = BigUint::one();
    for &a in c.residues() {
        let mut next = counts.clone();
        for s in 0..q {
            let shifted = (s + a as usize) % q;
            let add = counts[s].clone();
            next[shifted] += add;
        }
        counts = next;
    }
    SumDistribution { q: c.q(), counts }
}

/// Counts the ±1 assignments by residue class, via the identity
/// Σ δ_i a_i = 2·Σ ε_i a_i − Σ a_i applied to the 0/1 distribution.
pub fn signed_sum_distribution(c: &Configuration) -> SumDistribution {
    let q = c.q() as u64;
    let subset = subset_sum_distribution(c);
    let total = c.total() as u64;
    let mut counts = vec![BigUint::zero(); q as usize];
    for (t, count) in subset.counts.iter().enumerate() {
        let s = (2 * t as u64 + (q - total % q)) % q;
        counts[s as usize] += count;
    }
    SumDistribution { q: c.q(), counts }
}

/// Total count over the target classes: Σ_{s ∈ P} counts[s].
pub fn count_in_set(d: &SumDistribution, p: &ResidueSet) -> Result<BigUint> {
    if d.q() != p.q() {
        return Err(Error::ModulusMismatch { left: d.q(), right: p.q() });
    }
    Ok(p.members().iter().map(|&s| &d.counts[s as usize]).sum())
}
