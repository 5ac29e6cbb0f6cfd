//! Acceptance suite: every claim the library makes is replayed against
//! independent enumeration at desk scale. Each criterion prints one
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use modsums::{
    binom, brute_count, build_partition, corollary2_bound, corollary2_extremal, corollary3_bound,
    count_in_set, exhaustive_max, exhaustive_min_class, exhaustive_signed_max, lemma_shift_check,
    mod_binomial, partition_bound, signed_sum_distribution, subset_sum_distribution,
    theorem1_bound, uniformity_report, verify_partition, Configuration, ResidueSet, SweepOptions,
};

fn criterion(number: u32, name: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("criterion {number} ({name}): PASS"),
        Err(msg) => {
            println!("criterion {number} ({name}): FAIL - {msg}");
            panic!("criterion {number} ({name}) failed: {msg}");
        }
    }
}

fn check(ok: bool, msg: impl Fn() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn units(q: u32) -> Vec<u32> {
    (0..q.max(1)).filter(|&a| num_integer::gcd(a, q) == 1).collect()
}

/// Every reduced configuration of length n mod q, odometer order.
fn for_each_configuration(n: u32, q: u32, mut f: impl FnMut(&Configuration)) {
    let us = units(q);
    let mut idx = vec![0usize; n as usize];
    loop {
        let residues: Vec<i64> = idx.iter().map(|&i| us[i] as i64).collect();
        f(&Configuration::new(q, residues).unwrap());
        let mut pos = n as usize;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < us.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn u64_counts(c: &Configuration) -> Vec<u64> {
    subset_sum_distribution(c)
        .counts()
        .iter()
        .map(|b| {
            let digits = b.to_u64_digits();
            match digits.len() {
                0 => 0,
                1 => digits[0],
                _ => panic!("count does not fit u64"),
            }
        })
        .collect()
}

#[test]
fn criterion_1_formula_vs_brute_force() {
    criterion(1, "formula vs brute force, full grid", || {
        let opts = SweepOptions::default();
        for q in 2..=6u32 {
            for n in 1..=8u32 {
                for k in 1..=q {
                    let r = exhaustive_max(n, q, k, &opts).map_err(|e| e.to_string())?;
                    check(r.agree, || {
                        format!(
                            "n={n} q={q} k={k}: observed {} != formula {}",
                            r.observed, r.formula
                        )
                    })?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_2_wraparound_case() {
    criterion(2, "wraparound n=6 q=3 k=1", || {
        let r = exhaustive_max(6, 3, 1, &SweepOptions::default()).map_err(|e| e.to_string())?;
        check(r.observed == BigUint::from(22u32), || {
            format!("observed {}", r.observed)
        })?;
        check(binom(6, 3) == BigUint::from(20u32) && r.observed > binom(6, 3), || {
            "max does not exceed the middle binomial".into()
        })?;
        let witness = Configuration::new(3, vec![1, 1, 1, -1, -1, -1]).unwrap();
        let target = ResidueSet::new(3, vec![0]).unwrap();
        let attained = brute_count(&witness, &target).map_err(|e| e.to_string())?;
        check(attained == r.observed, || {
            format!("witness (1,1,1,-1,-1,-1) attains {attained}, sweep max {}", r.observed)
        })
    });
}

#[test]
fn criterion_3_corollary_1_regime() {
    criterion(3, "no-wraparound regime equals the middle binomial", || {
        for n in 0..=12u32 {
            let half = (n + 1) / 2;
            for q in half + 1..=half + 4 {
                let bound = theorem1_bound(n, 1, q).map_err(|e| e.to_string())?;
                check(bound == binom(n, n as i64 / 2), || {
                    format!("n={n} q={q}: formula {bound}")
                })?;
            }
        }
        let opts = SweepOptions::default();
        for n in 1..=8u32 {
            let half = (n + 1) / 2;
            for q in half + 1..=half + 4 {
                let r = exhaustive_max(n, q, 1, &opts).map_err(|e| e.to_string())?;
                check(r.agree && r.observed == binom(n, n as i64 / 2), || {
                    format!("n={n} q={q}: sweep observed {}", r.observed)
                })?;
            }
        }
        Ok(())
    });
}

/// Criteria 4 and 5 walk the same configuration grid; do it once.
struct CertificateSweep {
    cert_failure: Option<String>,
    multiset_failure: Option<String>,
}

fn certificate_sweep() -> &'static CertificateSweep {
    static RESULT: OnceLock<CertificateSweep> = OnceLock::new();
    RESULT.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mut cert_failure = None;
        let mut multiset_failure = None;
        'outer: for q in 1..=6u32 {
            for n in 0..=10u32 {
                let allones_sizes =
                    build_partition(&Configuration::all_ones(n, q).unwrap()).unwrap().size_multiset();
                let mut stop = false;
                for_each_configuration(n, q, |c| {
                    if stop || cert_failure.is_some() {
                        return;
                    }
                    let tag = || format!("n={n} q={q} a={:?}", c.residues());
                    let p = match build_partition(c) {
                        Ok(p) => p,
                        Err(e) => {
                            cert_failure = Some(format!("{}: {e}", tag()));
                            stop = true;
                            return;
                        }
                    };
                    let report = verify_partition(&p);
                    if !report.pass {
                        cert_failure =
                            Some(format!("{}: {}", tag(), report.first_violation.unwrap()));
                        stop = true;
                        return;
                    }
                    if BigUint::from(p.blocks().len())
                        != mod_binomial(n, n as i64 / 2, q).unwrap()
                    {
                        cert_failure = Some(format!("{}: wrong block count", tag()));
                        stop = true;
                        return;
                    }
                    if multiset_failure.is_none() && p.size_multiset() != allones_sizes {
                        multiset_failure = Some(format!("{}: size multiset differs", tag()));
                    }
                    // Eq. (1) value against the closed form, all k.
                    let mut bounds = vec![0u64; q as usize + 1];
                    for k in 1..=q {
                        let cert = partition_bound(&p, k).unwrap();
                        if cert != theorem1_bound(n, k, q).unwrap() {
                            cert_failure = Some(format!("{}: k={k} certificate != formula", tag()));
                            stop = true;
                            return;
                        }
                        bounds[k as usize] = cert.to_u64_digits().first().copied().unwrap_or(0);
                    }
                    // Dominance over sampled targets, exact counts.
                    let counts = u64_counts(c);
                    for _ in 0..1000 {
                        let mask = rng.random_range(1u64..1u64 << q);
                        let k = mask.count_ones();
                        let count: u64 =
                            (0..q).filter(|&r| mask >> r & 1 == 1).map(|r| counts[r as usize]).sum();
                        if count > bounds[k as usize] {
                            cert_failure = Some(format!("{}: count {count} over certificate", tag()));
                            stop = true;
                            return;
                        }
                    }
                    // All targets at n <= 6, through the exact interfaces.
                    if n <= 6 {
                        let d = subset_sum_distribution(c);
                        for mask in 1u64..1 << q {
                            let members: Vec<i64> =
                                (0..q as i64).filter(|&r| mask >> r & 1 == 1).collect();
                            let k = members.len() as u32;
                            let target = ResidueSet::new(q, members).unwrap();
                            let count = count_in_set(&d, &target).unwrap();
                            if count > partition_bound(&p, k).unwrap() {
                                cert_failure =
                                    Some(format!("{}: exact count over certificate", tag()));
                                stop = true;
                                return;
                            }
                        }
                    }
                });
                if cert_failure.is_some() {
                    break 'outer;
                }
            }
        }
        CertificateSweep { cert_failure, multiset_failure }
    })
}

#[test]
fn criterion_4_certificate_suite() {
    criterion(4, "certificate partitions, all configurations", || {
        match &certificate_sweep().cert_failure {
            None => Ok(()),
            Some(msg) => Err(msg.clone()),
        }
    });
}

#[test]
fn criterion_5_size_multiset_independence() {
    criterion(5, "block sizes independent of residue values", || {
        match &certificate_sweep().multiset_failure {
            None => Ok(()),
            Some(msg) => Err(msg.clone()),
        }
    });
}

#[test]
fn criterion_6_minimum_class() {
    criterion(6, "minimum residue class", || {
        let opts = SweepOptions::default();
        for q in 1..=6u32 {
            for n in q.saturating_sub(1)..=8 {
                let r = exhaustive_min_class(n, q, &opts).map_err(|e| e.to_string())?;
                check(r.agree, || {
                    format!("n={n} q={q}: observed {} != formula {}", r.observed, r.formula)
                })?;
                let e = corollary2_extremal(n, q).map_err(|e| e.to_string())?;
                check(e.claimed == r.observed, || {
                    format!("n={n} q={q}: extremal instance claims {}", e.claimed)
                })?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_7_signed_sums() {
    criterion(7, "signed sums", || {
        let opts = SweepOptions::default();
        for q in 1..=6u32 {
            for n in 0..=8u32 {
                for k in 1..=q {
                    let r = exhaustive_signed_max(n, q, k, &opts).map_err(|e| e.to_string())?;
                    check(r.agree, || {
                        format!(
                            "n={n} q={q} k={k}: observed {} != formula {}",
                            r.observed, r.formula
                        )
                    })?;
                }
            }
        }
        // kernel vs direct sign-pattern enumeration at n <= 12
        let mut rng = ChaCha8Rng::seed_from_u64(0x0ddc0de);
        for q in 1..=9u32 {
            let us = units(q);
            for _ in 0..40 {
                let n = rng.random_range(0..=12u32);
                let residues: Vec<i64> =
                    (0..n).map(|_| us[rng.random_range(0..us.len())] as i64).collect();
                let c = Configuration::new(q, residues.clone()).unwrap();
                let mut direct = vec![0u64; q as usize];
                for mask in 0u64..1 << n {
                    let mut sum = 0i64;
                    for (i, &a) in residues.iter().enumerate() {
                        sum += if mask >> i & 1 == 1 { a } else { -a };
                    }
                    direct[sum.rem_euclid(q as i64) as usize] += 1;
                }
                let d = signed_sum_distribution(&c);
                for s in 0..q as usize {
                    check(d.counts()[s] == BigUint::from(direct[s]), || {
                        format!("q={q} a={residues:?} class {s}")
                    })?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_8_uniformity() {
    criterion(8, "all-ones distribution near uniform at q=7 n=100", || {
        let r = uniformity_report(100, 7).map_err(|e| e.to_string())?;
        let tolerance = BigRational::new(1.into(), 1000.into());
        check(r.max_deviation < tolerance, || {
            format!("max deviation {}", r.max_deviation)
        })
    });
}

#[test]
fn criterion_9_oracle_equivalence() {
    criterion(9, "convolution vs direct enumeration, 500 random instances", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0xfeedbeef);
        for _ in 0..500 {
            let q = rng.random_range(1..=9u32);
            let n = rng.random_range(0..=14u32);
            let us = units(q);
            let residues: Vec<i64> =
                (0..n).map(|_| us[rng.random_range(0..us.len())] as i64).collect();
            let c = Configuration::new(q, residues).unwrap();
            let members: Vec<i64> =
                (0..q as i64).filter(|_| rng.random_bool(0.5)).collect();
            let p = ResidueSet::new(q, members).unwrap();
            let fast = count_in_set(&subset_sum_distribution(&c), &p).unwrap();
            let slow = brute_count(&c, &p).map_err(|e| e.to_string())?;
            check(fast == slow, || {
                format!("q={q} a={:?} P={:?}: {fast} != {slow}", c.residues(), p.members())
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_10_shift_lemma() {
    criterion(10, "shift-invariance lemma, exhaustive to q=8", || {
        for q in 1..=8u32 {
            for a in units(q) {
                for mask in 1u64..1 << q {
                    let s: Vec<u32> = (0..q).filter(|&r| mask >> r & 1 == 1).collect();
                    let invariant = lemma_shift_check(&s, a, q).map_err(|e| e.to_string())?;
                    check(invariant == (s.len() == q as usize), || {
                        format!("q={q} a={a} S={s:?}")
                    })?;
                }
            }
        }
        Ok(())
    });
}

#[test]
fn corollary3_bound_never_exceeds_all_assignments() {
    // supporting sanity check for criterion 7's formula side
    for q in 1..=8u32 {
        for n in 0..=10u32 {
            for k in 1..=q {
                assert!(corollary3_bound(n, k, q).unwrap() <= BigUint::from(2u32).pow(n));
            }
        }
    }
}

#[test]
fn corollary2_bound_approaches_uniform() {
    // the minimum-class value is within the uniform share for large n
    for q in 2..=6u32 {
        let lower = corollary2_bound(60, q).unwrap();
        let uniform = BigUint::from(2u32).pow(60) / q;
        let slack = &uniform / 20u32;
        assert!(lower > &uniform - &slack, "q={q}: {lower} vs {uniform}");
    }
}
