//! Generators for the configurations and target sets attaining the
//! bounds. Every instance is self-checked: the claimed value is
//! recomputed from the actual distribution before it is returned.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::config::{Configuration, ResidueSet};
use crate::core_math::{
    corollary2_bound, count_in_set, middle_window, subset_sum_distribution, theorem1_bound,
};
use crate::error::{Error, Result};

/// A configuration and target set together with the bound they attain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalInstance {
    pub configuration: Configuration,
    pub target: ResidueSet,
    pub claimed: BigUint,
}

fn checked(configuration: Configuration, target: ResidueSet, claimed: BigUint) -> Result<ExtremalInstance> {
    let observed = count_in_set(&subset_sum_distribution(&configuration), &target)?;
    if observed != claimed {
        return Err(Error::WitnessMismatch {
            observed: observed.to_string(),
            expected: claimed.to_string(),
        });
    }
    Ok(ExtremalInstance { configuration, target, claimed })
}

/// All a_i = 1 with the k middle window values as targets.
pub fn allones_extremal(n: u32, k: u32, q: u32) -> Result<ExtremalInstance> {
    let bound = theorem1_bound(n, k, q)?;
    let c = Configuration::all_ones(n, q)?;
    let (lo, hi) = middle_window(n, k);
    // Window residues are distinct mod q since k <= q.
    let target = ResidueSet::new(q, lo..=hi)?;
    checked(c, target, bound)
}

/// ⌈n/2⌉ entries 1 and ⌊n/2⌋ entries −1, with the first k values of the
/// sequence 0, 1, −1, 2, −2, … as targets.
pub fn split_extremal(n: u32, k: u32, q: u32) -> Result<ExtremalInstance> {
    let bound = theorem1_bound(n, k, q)?;
    let ones = (n + 1) / 2;
    let residues = (0..n).map(|i| if i < ones { 1 } else { -1 });
    let c = Configuration::new(q, residues)?;
    let target = ResidueSet::new(q, alternating_sequence(k))?;
    checked(c, target, bound)
}

/// 0, 1, -1, 2, -2, ... (the first k values); distinct mod q for k <= q.
fn alternating_sequence(k: u32) -> Vec<i64> {
    (0..k as i64)
        .map(|i| if i % 2 == 0 { -(i / 2) } else { i / 2 + 1 })
        .collect()
}

/// All a_i = 1 with the single minimizing class ⌈(n−q)/2⌉.
/// The instance attains the minimum over all q classes.
pub fn corollary2_extremal(n: u32, q: u32) -> Result<ExtremalInstance> {
    let bound = corollary2_bound(n, q)?;
    let c = Configuration::all_ones(n, q)?;
    let rho = (n as i64 - q as i64 + 1).div_euclid(2);
    let target = ResidueSet::new(q, vec![rho])?;
    let instance = checked(c, target, bound)?;
    let d = subset_sum_distribution(&instance.configuration);
    if d.counts().iter().any(|c| c < &instance.claimed) {
        return Err(Error::WitnessMismatch {
            observed: d.counts().iter().min().unwrap().to_string(),
            expected: instance.claimed.to_string(),
        });
    }
    Ok(instance)
}
