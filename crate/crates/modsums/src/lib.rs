//! Exact combinatorics of subset sums of reduced residues mod q.
//!
//! Given reduced residues `a_1..a_n` (each coprime to `q`), this crate
//! counts how many of the `2^n` sums `Σ ε_i a_i` (ε_i ∈ {0,1}) or
//! `Σ δ_i a_i` (δ_i ∈ {±1}) land in a chosen set of residue classes,
//! computes the extremal bounds in closed form (sums of middle mod-q
//! binomial coefficients), constructs the certificate partition of
//! `2^[n]` into structures that proves the upper bound, generates the
//! configurations attaining it, and cross-checks everything against
//! independent brute-force enumeration at desk scale.

pub mod config;
pub mod core_math;
pub mod error;
pub mod extremal;
pub mod structures;
pub mod verify;

pub mod cli;

pub use config::{Configuration, ResidueSet};
pub use core_math::{
    binom, corollary2_bound, corollary3_bound, count_in_set, middle_window, mod_binomial,
    signed_sum_distribution, subset_sum_distribution, theorem1_bound, SumDistribution,
};
pub use error::Error;
pub use extremal::{allones_extremal, corollary2_extremal, split_extremal, ExtremalInstance};
pub use structures::{
    build_partition, build_partition_with_limit, lemma_shift_check, partition_bound,
    sum_set_shape, verify_partition, IntervalSumSet, Structure, StructurePartition,
};
pub use verify::{
    brute_count, exhaustive_max, exhaustive_min_class, exhaustive_signed_max, uniformity_report,
    SweepOptions, SweepResult, UniformityReport,
};

/// Default guard on explicit `2^n` enumeration (partitions, brute force).
pub const DEFAULT_ENUM_LIMIT: u32 = 24;
