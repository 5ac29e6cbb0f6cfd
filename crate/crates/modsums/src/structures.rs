//! Certificate partitions: 2^[n] split into blocks whose subset sums are
//! pairwise distinct mod q, built by the induction that proves the
//! middle-window bound, plus the Σ min(k, |block|) certificate value.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::config::Configuration;
use crate::core_math::mod_binomial;
use crate::error::{Error, Result};
use crate::DEFAULT_ENUM_LIMIT;

/// A block of subsets of [n], as bit masks, whose residue sums are
/// pairwise distinct. `sums[i]` is the sum of the configuration residues
/// over `members[i]`, reduced mod q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Structure {
    members: Vec<u32>,
    sums: Vec<u32>,
}

impl Structure {
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn sums(&self) -> &[u32] {
        &self.sums
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A partition of all 2^n subsets into structures for one configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructurePartition {
    configuration: Configuration,
    blocks: Vec<Structure>,
}

impl StructurePartition {
    pub fn configuration(&self) -> &Configuration {
        &self.configuration
    }

    pub fn n(&self) -> u32 {
        self.configuration.n()
    }

    pub fn blocks(&self) -> &[Structure] {
        &self.blocks
    }

    /// Multiset of block sizes, sorted ascending.
    pub fn size_multiset(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable();
        sizes
    }
}

/// The sum set of a block built for the all-ones configuration: either
/// all of Z_q, or the reductions of an integer interval x..y centered
/// about n/2 (x + y = n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntervalSumSet {
    Full,
    Interval { x: i64, y: i64 },
}

pub fn build_partition(c: &Configuration) -> Result<StructurePartition> {
    build_partition_with_limit(c, DEFAULT_ENUM_LIMIT)
}

/// Builds the partition by induction on n, starting from the single
/// block {∅}. At each step every block A spawns A' (members with the new
/// element added). When the sum set of A is already all of Z_q both are
/// kept; otherwise the member of A' whose sum is the smallest residue
/// missing from S(A) moves into A, and an emptied A' is dropped.
/// Deterministic for fixed input.
pub fn build_partition_with_limit(c: &Configuration, limit: u32) -> Result<StructurePartition> {
    let n = c.n();
    if n > limit || n > 31 {
        return Err(Error::EnumerationLimit { n, limit: limit.min(31) });
    }
    let q = c.q() as usize;
    let mut blocks = vec![Structure { members: vec![0], sums: vec![0] }];
    let mut in_sum_set = vec![false; q];

    for level in 0..n {
        let a = c.residues()[level as usize] as usize;
        let bit = 1u32 << level;
        let mut next = Vec::with_capacity(blocks.len() * 2);

        for block in blocks {
            if block.len() == q {
                // Sum set is all of Z_q; keep the block and its copy.
                let primed = Structure {
                    members: block.members.iter().map(|&m| m | bit).collect(),
                    sums: block.sums.iter().map(|&s| (s as usize + a) as u32 % q as u32).collect(),
                };
                next.push(block);
                next.push(primed);
                continue;
            }

            for &s in &block.sums {
                in_sum_set[s as usize] = true;
            }
            // Smallest t in S(A') \ S(A); S(A') = S(A) + a.
            let (transfer_idx, t) = block
                .sums
                .iter()
                .enumerate()
                .map(|(i, &s)| (i, ((s as usize + a) % q) as u32))
                .filter(|&(_, t)| !in_sum_set[t as usize])
                .min_by_key(|&(_, t)| t)
                .expect("a non-full sum set always grows under a reduced shift");
            for &s in &block.sums {
                in_sum_set[s as usize] = false;
            }

            let mut grown = block.clone();
            grown.members.push(block.members[transfer_idx] | bit);
            grown.sums.push(t);
            next.push(grown);

            if block.len() > 1 {
                let mut members = Vec::with_capacity(block.len() - 1);
                let mut sums = Vec::with_capacity(block.len() - 1);
                for (i, (&m, &s)) in block.members.iter().zip(&block.sums).enumerate() {
                    if i != transfer_idx {
                        members.push(m | bit);
                        sums.push(((s as usize + a) % q) as u32);
                    }
                }
                next.push(Structure { members, sums });
            }
        }
        blocks = next;
    }

    Ok(StructurePartition { configuration: c.clone(), blocks })
}

/// Outcome of checking a partition against the structure definitions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub first_violation: Option<String>,
    pub block_count: usize,
}

/// Checks exact cover of 2^[n], distinct sums within each block, stored
/// sums against recomputed sums, and the block count against the middle
/// mod-q binomial coefficient. Failures are reported, not thrown.
pub fn verify_partition(p: &StructurePartition) -> VerificationReport {
    let report = |violation: Option<String>| VerificationReport {
        pass: violation.is_none(),
        first_violation: violation,
        block_count: p.blocks.len(),
    };
    let n = p.n();
    let q = p.configuration.q();
    let residues = p.configuration.residues();

    let mut seen = vec![false; 1usize << n];
    for (bi, block) in p.blocks.iter().enumerate() {
        if block.is_empty() {
            return report(Some(format!("block {bi} is empty")));
        }
        let mut sum_seen = vec![false; q as usize];
        for (&m, &s) in block.members.iter().zip(&block.sums) {
            if m as u64 >= 1u64 << n {
                return report(Some(format!("block {bi}: mask {m:#x} has bits past n={n}")));
            }
            if seen[m as usize] {
                return report(Some(format!("subset {m:#x} covered twice (block {bi})")));
            }
            seen[m as usize] = true;
            let recomputed = subset_sum(m, residues, q);
            if recomputed != s {
                return report(Some(format!(
                    "block {bi}: stored sum {s} for {m:#x}, recomputed {recomputed}"
                )));
            }
            if sum_seen[s as usize] {
                return report(Some(format!("block {bi}: duplicate sum {s}")));
            }
            sum_seen[s as usize] = true;
        }
    }
    if let Some(missing) = seen.iter().position(|&v| !v) {
        return report(Some(format!("subset {missing:#x} not covered")));
    }

    let expected = mod_binomial(n, n as i64 / 2, q).expect("q >= 1");
    if BigUint::from(p.blocks.len()) != expected {
        return report(Some(format!(
            "block count {} != middle mod-q binomial {}",
            p.blocks.len(),
            expected
        )));
    }
    report(None)
}

fn subset_sum(mask: u32, residues: &[u32], q: u32) -> u32 {
    let mut total = 0u64;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros();
        total += residues[i as usize] as u64;
        m &= m - 1;
    }
    (total % q as u64) as u32
}

/// The certified upper bound Σ_blocks min(k, |block|) on the number of
/// subset sums landing in any k residue classes.
pub fn partition_bound(p: &StructurePartition, k: u32) -> Result<BigUint> {
    let q = p.configuration.q();
    if k < 1 || k > q {
        return Err(Error::InvalidK { k, q });
    }
    let mut acc = BigUint::zero();
    for block in &p.blocks {
        acc += block.len().min(k as usize);
    }
    Ok(acc)
}

/// Classifies an all-ones block's sum set as full or as the mod-q
/// reduction of an interval x..y with x + y = n. Any other shape is an
/// error; for partitions produced by `build_partition` on all-ones
/// configurations it never occurs.
pub fn sum_set_shape(s: &Structure, n: u32, q: u32) -> Result<IntervalSumSet> {
    let len = s.len() as i64;
    if len == q as i64 {
        return Ok(IntervalSumSet::Full);
    }
    // x + y = n with y - x + 1 = len forces 2x = n - len + 1.
    let twice_x = n as i64 - len + 1;
    if twice_x < 0 || twice_x % 2 != 0 {
        return Err(Error::ShapeViolation);
    }
    let x = twice_x / 2;
    let y = x + len - 1;
    let mut expected: Vec<u32> = (x..=y).map(|v| v.rem_euclid(q as i64) as u32).collect();
    expected.sort_unstable();
    expected.dedup();
    let mut actual = s.sums.to_vec();
    actual.sort_unstable();
    if expected.len() == s.len() && expected == actual {
        Ok(IntervalSumSet::Interval { x, y })
    } else {
        Err(Error::ShapeViolation)
    }
}

/// Whether S + a = S, for a set of residues S and a reduced shift a.
/// True exactly when S is all of Z_q.
pub fn lemma_shift_check(s: &[u32], a: u32, q: u32) -> Result<bool> {
    if q == 0 {
        return Err(Error::ZeroModulus);
    }
    if a >= q {
        return Err(Error::OutOfRange { value: a as i64, q });
    }
    if num_integer::gcd(a, q) != 1 {
        return Err(Error::NotReduced { index: 0, value: a as i64, q });
    }
    if s.is_empty() {
        return Err(Error::Parse("empty residue set".into()));
    }
    let mut member = vec![false; q as usize];
    for &r in s {
        if r >= q {
            return Err(Error::OutOfRange { value: r as i64, q });
        }
        member[r as usize] = true;
    }
    Ok(s.iter().all(|&r| member[((r + a) % q) as usize]))
}

// --- text serialization ---------------------------------------------------

impl StructurePartition {
    /// Text form: a header `n=<n> q=<q> a=<a_1,...,a_n>` followed by one
    /// line per block of comma-separated subset masks in hexadecimal.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "n={} q={} a={}\n",
            self.n(),
            self.configuration.q(),
            self.configuration
                .residues()
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        for block in &self.blocks {
            let line: Vec<String> = block.members.iter().map(|m| format!("{m:x}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    /// Parses the text form. Sums are recomputed from the configuration;
    /// the result is syntactically valid but not necessarily a correct
    /// partition — run `verify_partition` for that.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let mut n_field = None;
        let mut q_field = None;
        let mut a_field = None;
        for token in header.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header token {token:?}")))?;
            match key {
                "n" => {
                    n_field = Some(value.parse::<u32>().map_err(|e| {
                        Error::Parse(format!("bad n {value:?}: {e}"))
                    })?)
                }
                "q" => {
                    q_field = Some(value.parse::<u32>().map_err(|e| {
                        Error::Parse(format!("bad q {value:?}: {e}"))
                    })?)
                }
                "a" => a_field = Some(value),
                _ => return Err(Error::Parse(format!("unknown header key {key:?}"))),
            }
        }
        let n = n_field.ok_or_else(|| Error::Parse("header missing n".into()))?;
        let q = q_field.ok_or_else(|| Error::Parse("header missing q".into()))?;
        let a = a_field.ok_or_else(|| Error::Parse("header missing a".into()))?;
        if n > 31 {
            return Err(Error::EnumerationLimit { n, limit: 31 });
        }
        let configuration = Configuration::parse(q, a)?;
        if configuration.n() != n {
            return Err(Error::Parse(format!(
                "header says n={n} but {} residues given",
                configuration.n()
            )));
        }

        let mut blocks = Vec::new();
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut members = Vec::new();
            let mut sums = Vec::new();
            for tok in line.split(',') {
                let mask = u32::from_str_radix(tok.trim(), 16)
                    .map_err(|e| Error::Parse(format!("bad mask {tok:?}: {e}")))?;
                if (mask as u64) >= 1u64 << n {
                    return Err(Error::Parse(format!("mask {mask:#x} out of range for n={n}")));
                }
                sums.push(subset_sum(mask, configuration.residues(), q));
                members.push(mask);
            }
            blocks.push(Structure { members, sums });
        }
        Ok(StructurePartition { configuration, blocks })
    }
}
