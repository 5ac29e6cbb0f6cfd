//! Problem instances: a modulus with reduced residues, and target residue sets.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A modulus `q` together with reduced residues `a_1..a_n`.
///
/// Every entry is stored canonically reduced into `[0, q)` and must be
/// coprime to `q`. Negative inputs are accepted and normalized, so `-1`
/// becomes `q - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Configuration {
    q: u32,
    residues: Vec<u32>,
}

impl Configuration {
    pub fn new<I>(q: u32, residues: I) -> Result<Self>
    where
        I: IntoIterator<Item = i64>,
    {
        if q == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut reduced = Vec::new();
        for (index, value) in residues.into_iter().enumerate() {
            let r = value.rem_euclid(q as i64) as u32;
            if r.gcd(&q) != 1 {
                // 1-based, matching the a_1..a_n naming
                return Err(Error::NotReduced { index: index + 1, value, q });
            }
            reduced.push(r);
        }
        Ok(Configuration { q, residues: reduced })
    }

    /// All residues equal to 1 (or 0 when q = 1).
    pub fn all_ones(n: u32, q: u32) -> Result<Self> {
        Configuration::new(q, std::iter::repeat(1).take(n as usize))
    }

    /// Parses a comma-separated residue list such as `"1,1,-1"`.
    /// An empty string is the empty configuration.
    pub fn parse(q: u32, text: &str) -> Result<Self> {
        Configuration::new(q, parse_int_list(text)?)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.residues.len() as u32
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    /// Sum of all residues mod q.
    pub fn total(&self) -> u32 {
        self.residues
            .iter()
            .fold(0u64, |acc, &a| (acc + a as u64) % self.q as u64) as u32
    }
}

/// A set of `k` distinct residue classes mod `q` (the target set P).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ResidueSet {
    q: u32,
    members: Vec<u32>,
}

impl ResidueSet {
    /// Members are reduced mod q; duplicates after reduction are an error.
    pub fn new<I>(q: u32, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = i64>,
    {
        if q == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut reduced: Vec<u32> = members
            .into_iter()
            .map(|v| v.rem_euclid(q as i64) as u32)
            .collect();
        reduced.sort_unstable();
        for w in reduced.windows(2) {
            if w[0] == w[1] {
                return Err(Error::Parse(format!(
                    "duplicate residue {} in target set mod {}",
                    w[0], q
                )));
            }
        }
        Ok(ResidueSet { q, members: reduced })
    }

    pub fn empty(q: u32) -> Result<Self> {
        ResidueSet::new(q, std::iter::empty())
    }

    pub fn full(q: u32) -> Result<Self> {
        ResidueSet::new(q, (0..q as i64).collect::<Vec<_>>())
    }

    pub fn parse(q: u32, text: &str) -> Result<Self> {
        ResidueSet::new(q, parse_int_list(text)?)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> u32 {
        self.members.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members in ascending order.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, residue: u32) -> bool {
        self.members.binary_search(&(residue % self.q)).is_ok()
    }

    /// Bitmask over residues; only valid for q <= 64.
    pub fn mask(&self) -> u64 {
        debug_assert!(self.q <= 64);
        self.members.iter().fold(0u64, |m, &r| m | 1u64 << r)
    }
}

fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("bad integer {:?}: {}", tok, e)))
        })
        .collect()
}
