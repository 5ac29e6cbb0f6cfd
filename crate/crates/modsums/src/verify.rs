//! Independent brute-force oracles and exhaustive desk-scale sweeps.
//!
//! Everything here counts by explicit enumeration of assignments and
//! shares no code with the convolution kernels it cross-checks.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::config::{Configuration, ResidueSet};
use crate::core_math::{corollary2_bound, corollary3_bound, subset_sum_distribution, theorem1_bound};
use crate::error::{Error, Result};
use crate::DEFAULT_ENUM_LIMIT;

/// Which extremum a sweep chased.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    Max,
    MinClass,
    SignedMax,
}

/// Outcome of one exhaustive sweep: the formula value, the observed
/// extremum, the lexicographically first witness attaining it, and
/// whether the two agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepResult {
    pub kind: SweepKind,
    pub n: u32,
    pub q: u32,
    pub k: u32,
    pub formula: BigUint,
    pub observed: BigUint,
    pub witness: Option<(Configuration, ResidueSet)>,
    pub agree: bool,
}

/// Knobs shared by the sweep drivers.
#[derive(Debug, Clone)]
pub struct SweepOptions {
    /// Maximum number of evaluated (configuration, target) pairs.
    pub budget: u128,
    /// Fix a_1 = smallest unit; sound because multiplying every a_i by a
    /// fixed unit permutes the residue classes.
    pub prune: bool,
    pub threads: usize,
    pub limit: u32,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            budget: 100_000_000,
            prune: true,
            threads: 1,
            limit: DEFAULT_ENUM_LIMIT,
        }
    }
}

/// Exact count of 0/1 assignments whose sum lands in P, by direct
/// enumeration of all 2^n subsets.
pub fn brute_count(c: &Configuration, p: &ResidueSet) -> Result<BigUint> {
    brute_count_with_limit(c, p, DEFAULT_ENUM_LIMIT)
}

pub fn brute_count_with_limit(c: &Configuration, p: &ResidueSet, limit: u32) -> Result<BigUint> {
    if c.q() != p.q() {
        return Err(Error::ModulusMismatch { left: c.q(), right: p.q() });
    }
    let n = c.n();
    if n > limit || n > 31 {
        return Err(Error::EnumerationLimit { n, limit: limit.min(31) });
    }
    let sums = enumerate_subset_sums(c);
    let mut in_p = vec![false; c.q() as usize];
    for &r in p.members() {
        in_p[r as usize] = true;
    }
    let hits = sums.iter().filter(|&&s| in_p[s as usize]).count();
    Ok(BigUint::from(hits))
}

/// sums[mask] = Σ_{i ∈ mask} a_i mod q for every mask in 0..2^n.
fn enumerate_subset_sums(c: &Configuration) -> Vec<u32> {
    let n = c.n();
    let q = c.q() as u64;
    let residues = c.residues();
    let mut sums = vec![0u32; 1usize << n];
    for mask in 1usize..1 << n {
        let low = mask & (mask - 1);
        let i = mask.trailing_zeros() as usize;
        sums[mask] = ((sums[low] as u64 + residues[i] as u64) % q) as u32;
    }
    sums
}

/// The reduced residues mod q in ascending order.
pub fn units(q: u32) -> Vec<u32> {
    (0..q.max(1))
        .filter(|&a| num_integer::gcd(a, q) == 1 || q == 1)
        .collect()
}

/// One candidate during a sweep, keyed for deterministic reduction:
/// better value wins, ties go to the lexicographically first
/// (configuration, target) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Candidate {
    value: u64,
    config_index: u64,
    target_index: u64,
}

fn better(a: Candidate, b: Candidate, maximize: bool) -> Candidate {
    use std::cmp::Ordering::*;
    match a.value.cmp(&b.value) {
        Greater => {
            if maximize {
                a
            } else {
                b
            }
        }
        Less => {
            if maximize {
                b
            } else {
                a
            }
        }
        Equal => {
            if (a.config_index, a.target_index) <= (b.config_index, b.target_index) {
                a
            } else {
                b
            }
        }
    }
}

/// Decodes the odometer index into a configuration over the given units.
fn config_at(index: u64, n: u32, q: u32, us: &[u32], prune: bool) -> Configuration {
    let mut residues = vec![0i64; n as usize];
    let mut rest = index;
    let start = usize::from(prune && n > 0);
    if start == 1 {
        residues[0] = us[0] as i64;
    }
    for pos in (start..n as usize).rev() {
        residues[pos] = us[(rest % us.len() as u64) as usize] as i64;
        rest /= us.len() as u64;
    }
    Configuration::new(q, residues).expect("units are reduced")
}

/// All k-element subsets of 0..q in lexicographic order, as sorted vecs.
fn k_subsets(q: u32, k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (0..k).collect();
    if k > q {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k as i64 - 1;
        while i >= 0 && cur[i as usize] == q - k + i as u32 {
            i -= 1;
        }
        if i < 0 {
            return out;
        }
        cur[i as usize] += 1;
        for j in i as usize + 1..k as usize {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

struct SweepSpace {
    us: Vec<u32>,
    targets: Vec<Vec<u32>>,
    config_count: u64,
}

fn sweep_space(n: u32, q: u32, k: u32, opts: &SweepOptions) -> Result<SweepSpace> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    if k < 1 || k > q {
        return Err(Error::InvalidK { k, q });
    }
    if n > opts.limit || n > 31 {
        return Err(Error::EnumerationLimit { n, limit: opts.limit.min(31) });
    }
    let us = units(q);
    let free = if opts.prune { n.saturating_sub(1) } else { n };
    let config_count = (us.len() as u64)
        .checked_pow(free)
        .ok_or(Error::BudgetExceeded { required: u128::MAX, budget: opts.budget })?;
    let targets = k_subsets(q, k);
    let required = config_count as u128 * targets.len() as u128;
    if required > opts.budget {
        return Err(Error::BudgetExceeded { required, budget: opts.budget });
    }
    Ok(SweepSpace { us, targets, config_count })
}

/// Per-configuration class counts; `signed` reinterprets each subset as
/// a sign pattern (bit set = +1, clear = −1).
fn class_counts(c: &Configuration, signed: bool) -> Vec<u64> {
    let q = c.q() as u64;
    let sums = enumerate_subset_sums(c);
    let mut counts = vec![0u64; q as usize];
    if signed {
        let total = c.total() as u64;
        for s in sums {
            counts[((2 * s as u64 + q - total) % q) as usize] += 1;
        }
    } else {
        for s in sums {
            counts[s as usize] += 1;
        }
    }
    counts
}

fn run_sweep(
    kind: SweepKind,
    n: u32,
    q: u32,
    k: u32,
    formula: BigUint,
    opts: &SweepOptions,
) -> Result<SweepResult> {
    let space = sweep_space(n, q, k, opts)?;
    let maximize = !matches!(kind, SweepKind::MinClass);
    let signed = matches!(kind, SweepKind::SignedMax);

    let evaluate = |config_index: u64| -> Candidate {
        let c = config_at(config_index, n, q, &space.us, opts.prune);
        let counts = class_counts(&c, signed);
        let mut best: Option<Candidate> = None;
        for (ti, target) in space.targets.iter().enumerate() {
            let value: u64 = target.iter().map(|&r| counts[r as usize]).sum();
            let cand = Candidate { value, config_index, target_index: ti as u64 };
            best = Some(match best {
                None => cand,
                Some(b) => better(b, cand, maximize),
            });
        }
        best.expect("at least one target")
    };

    let reduce = |a: Option<Candidate>, b: Option<Candidate>| match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => Some(better(a, b, maximize)),
    };

    let best = if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .expect("thread pool");
        pool.install(|| {
            (0..space.config_count)
                .into_par_iter()
                .map(|i| Some(evaluate(i)))
                .reduce(|| None, reduce)
        })
    } else {
        (0..space.config_count).map(|i| Some(evaluate(i))).fold(None, reduce)
    };
    let best = best.expect("config space is never empty");

    let witness_config = config_at(best.config_index, n, q, &space.us, opts.prune);
    let witness_target = ResidueSet::new(
        q,
        space.targets[best.target_index as usize].iter().map(|&r| r as i64),
    )?;
    let observed = BigUint::from(best.value);
    let agree = observed == formula;
    Ok(SweepResult {
        kind,
        n,
        q,
        k,
        formula,
        observed,
        witness: Some((witness_config, witness_target)),
        agree,
    })
}

/// Maximum of `brute_count` over every reduced configuration and every
/// k-subset of residues, checked against the middle-window formula.
pub fn exhaustive_max(n: u32, q: u32, k: u32, opts: &SweepOptions) -> Result<SweepResult> {
    run_sweep(SweepKind::Max, n, q, k, theorem1_bound(n, k, q)?, opts)
}

/// Minimum over configurations and single residue classes, checked
/// against the minimum-class bound; needs n ≥ q − 1.
pub fn exhaustive_min_class(n: u32, q: u32, opts: &SweepOptions) -> Result<SweepResult> {
    run_sweep(SweepKind::MinClass, n, q, 1, corollary2_bound(n, q)?, opts)
}

/// Maximum of the ±1 count over configurations and k-subsets, checked
/// against the signed bound.
pub fn exhaustive_signed_max(n: u32, q: u32, k: u32, opts: &SweepOptions) -> Result<SweepResult> {
    run_sweep(SweepKind::SignedMax, n, q, k, corollary3_bound(n, k, q)?, opts)
}

/// Per-class counts of a distribution with its exact deviation from the
/// uniform value 1/q, as rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformityReport {
    pub n: u32,
    pub q: u32,
    pub counts: Vec<BigUint>,
    pub min_fraction: BigRational,
    pub max_fraction: BigRational,
    pub max_deviation: BigRational,
}

/// Uniformity of the all-ones distribution; any n, exact.
pub fn uniformity_report(n: u32, q: u32) -> Result<UniformityReport> {
    uniformity_report_for(&Configuration::all_ones(n, q)?)
}

pub fn uniformity_report_for(c: &Configuration) -> Result<UniformityReport> {
    let d = subset_sum_distribution(c);
    let q = c.q();
    let total = BigUint::from(2u32).pow(c.n());
    let to_frac = |count: &BigUint| {
        BigRational::new(count.clone().into(), total.clone().into())
    };
    let uniform = BigRational::new(BigUint::one().into(), BigUint::from(q).into());
    let mut min_fraction: Option<BigRational> = None;
    let mut max_fraction: Option<BigRational> = None;
    let mut max_deviation = BigRational::zero();
    for count in d.counts() {
        let f = to_frac(count);
        let dev = (&f - &uniform).abs();
        if dev > max_deviation {
            max_deviation = dev;
        }
        min_fraction = Some(match min_fraction {
            None => f.clone(),
            Some(m) => m.min(f.clone()),
        });
        max_fraction = Some(match max_fraction {
            None => f,
            Some(m) => m.max(f),
        });
    }
    Ok(UniformityReport {
        n: c.n(),
        q,
        counts: d.counts().to_vec(),
        min_fraction: min_fraction.expect("q >= 1"),
        max_fraction: max_fraction.expect("q >= 1"),
        max_deviation,
    })
}
