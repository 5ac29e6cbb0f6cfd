//! Command-line front-end. Every subcommand prints one machine-readable
//! envelope (JSON by default, TSV on request) with exact integers as
//! decimal strings and rationals as numerator/denominator pairs.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::config::Configuration;
use crate::core_math::{
    corollary2_bound, corollary3_bound, signed_sum_distribution, subset_sum_distribution,
    theorem1_bound, SumDistribution,
};
use crate::error::Error;
use crate::extremal::{allones_extremal, corollary2_extremal, split_extremal, ExtremalInstance};
use crate::structures::{build_partition_with_limit, partition_bound, verify_partition, StructurePartition};
use crate::verify::{
    exhaustive_max, exhaustive_min_class, exhaustive_signed_max, uniformity_report_for,
    SweepKind, SweepOptions, SweepResult,
};
use crate::DEFAULT_ENUM_LIMIT;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DISAGREE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "modsums", version, about = "Exact bounds and certificates for subset sums of reduced residues mod q")]
struct Cli {
    /// Output format for the envelope on stdout.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BoundKind {
    Theorem1,
    Cor2,
    Cor3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExtremalKind {
    Allones,
    Split,
    Cor2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Max,
    MinClass,
    SignedMax,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a closed-form bound.
    Bound {
        #[arg(long, value_enum, default_value_t = BoundKind::Theorem1)]
        kind: BoundKind,
        #[arg(long)]
        n: u32,
        /// Size of the target residue set (ignored by --kind cor2).
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        q: u32,
    },
    /// Exact per-class distribution of the 2^n sums of a configuration.
    Dist {
        #[arg(long)]
        q: u32,
        /// Comma-separated residues; negatives are reduced mod q.
        #[arg(long, default_value = "")]
        a: String,
        /// Count ±1 assignments instead of 0/1.
        #[arg(long)]
        signed: bool,
    },
    /// Build the certificate partition, verify it, and serialize it.
    Partition {
        /// Required unless --load is given.
        #[arg(long, default_value_t = 0)]
        q: u32,
        #[arg(long, default_value = "")]
        a: String,
        /// Also report the certified bound for this k.
        #[arg(long, value_name = "K")]
        cert_bound: Option<u32>,
        /// Write the text form to this path.
        #[arg(long, value_name = "PATH")]
        save: Option<PathBuf>,
        /// Verify a previously saved partition instead of building one
        /// (--q/--a are ignored).
        #[arg(long, value_name = "PATH")]
        load: Option<PathBuf>,
        /// Override the explicit-enumeration guard.
        #[arg(long)]
        limit: Option<u32>,
    },
    /// Emit a bound-attaining instance.
    Extremal {
        #[arg(long, value_enum, default_value_t = ExtremalKind::Allones)]
        kind: ExtremalKind,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        q: u32,
    },
    /// Exhaustive sweeps comparing brute force against the formulas.
    /// --n/--q/--k accept a single value or an inclusive range lo..hi.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyKind::Max)]
        kind: VerifyKind,
        #[arg(long)]
        n: String,
        #[arg(long)]
        q: String,
        /// Defaults to 1..q for max kinds; fixed at 1 for min-class.
        #[arg(long)]
        k: Option<String>,
        /// Work budget in (configuration, target) pairs.
        #[arg(long)]
        budget: Option<u128>,
        /// Disable the fix-a_1 symmetry pruning.
        #[arg(long)]
        no_prune: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        limit: Option<u32>,
    },
    /// Exact deviation of a distribution from uniform.
    Uniformity {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
        /// Configuration to use instead of all-ones (must have n entries).
        #[arg(long)]
        a: Option<String>,
    },
}

/// Parses the arguments, runs the subcommand, prints the envelope, and
/// returns the process exit status: 0 success, 1 verification
/// disagreement, 2 invalid arguments.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version as "errors" with status 0
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            e.print().ok();
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok((envelope, status)) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&envelope).unwrap()),
                Format::Tsv => print!("{}", to_tsv(&envelope)),
            }
            status
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: &Command) -> Result<(Value, i32), Error> {
    match command {
        Command::Bound { kind, n, k, q } => {
            let value = match kind {
                BoundKind::Theorem1 => theorem1_bound(*n, *k, *q)?,
                BoundKind::Cor2 => corollary2_bound(*n, *q)?,
                BoundKind::Cor3 => corollary3_bound(*n, *k, *q)?,
            };
            let params = json!({
                "kind": kind_name(*kind), "n": n, "k": k, "q": q,
            });
            Ok((envelope("bound", params, json!({ "value": value.to_string() })), EXIT_OK))
        }
        Command::Dist { q, a, signed } => {
            let c = Configuration::parse(*q, a)?;
            let d = if *signed {
                signed_sum_distribution(&c)
            } else {
                subset_sum_distribution(&c)
            };
            let params = json!({ "q": q, "a": c.residues(), "signed": signed });
            Ok((envelope("dist", params, dist_value(&d)), EXIT_OK))
        }
        Command::Partition { q, a, cert_bound, save, load, limit } => {
            let limit = effective_limit(*limit);
            let partition = match load {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    StructurePartition::from_text(&text)?
                }
                None => {
                    let c = Configuration::parse(*q, a)?;
                    build_partition_with_limit(&c, limit)?
                }
            };
            let report = verify_partition(&partition);
            let mut result = Map::new();
            result.insert("n".into(), json!(partition.n()));
            result.insert("q".into(), json!(partition.configuration().q()));
            result.insert("a".into(), json!(partition.configuration().residues()));
            result.insert("block_count".into(), json!(report.block_count));
            result.insert("sizes".into(), json!(partition.size_multiset()));
            result.insert(
                "verification".into(),
                json!({ "pass": report.pass, "first_violation": report.first_violation }),
            );
            if let Some(k) = cert_bound {
                result.insert(
                    "cert_bound".into(),
                    json!({ "k": k, "value": partition_bound(&partition, *k)?.to_string() }),
                );
            }
            result.insert(
                "blocks".into(),
                Value::Array(
                    partition
                        .blocks()
                        .iter()
                        .map(|b| {
                            json!(b
                                .members()
                                .iter()
                                .map(|m| format!("{m:x}"))
                                .collect::<Vec<_>>()
                                .join(","))
                        })
                        .collect(),
                ),
            );
            if let Some(path) = save {
                std::fs::write(path, partition.to_text())
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            }
            let params = json!({
                "q": q, "a": a, "load": load.as_ref().map(|p| p.display().to_string()),
            });
            let status = if report.pass { EXIT_OK } else { EXIT_DISAGREE };
            Ok((envelope("partition", params, Value::Object(result)), status))
        }
        Command::Extremal { kind, n, k, q } => {
            let instance = match kind {
                ExtremalKind::Allones => allones_extremal(*n, *k, *q)?,
                ExtremalKind::Split => split_extremal(*n, *k, *q)?,
                ExtremalKind::Cor2 => corollary2_extremal(*n, *q)?,
            };
            let params = json!({
                "kind": extremal_name(*kind), "n": n, "k": k, "q": q,
            });
            Ok((envelope("extremal", params, instance_value(&instance)), EXIT_OK))
        }
        Command::Verify { kind, n, q, k, budget, no_prune, threads, limit } => {
            let mut opts = SweepOptions {
                prune: !no_prune,
                threads: (*threads).max(1),
                limit: effective_limit(*limit),
                ..SweepOptions::default()
            };
            if let Some(b) = budget {
                opts.budget = *b;
            }
            let n_range = parse_range(n)?;
            let q_range = parse_range(q)?;
            let mut results = Vec::new();
            for q in q_range.clone() {
                for n in n_range.clone() {
                    let k_range = match (kind, k) {
                        (VerifyKind::MinClass, _) => 1..=1,
                        (_, Some(spec)) => {
                            let r = parse_range(spec)?;
                            *r.start()..=(*r.end()).min(q)
                        }
                        (_, None) => 1..=q,
                    };
                    for k in k_range {
                        let r = match kind {
                            VerifyKind::Max => exhaustive_max(n, q, k, &opts),
                            VerifyKind::MinClass => exhaustive_min_class(n, q, &opts),
                            VerifyKind::SignedMax => exhaustive_signed_max(n, q, k, &opts),
                        };
                        match r {
                            Ok(r) => results.push(r),
                            // min-class is undefined below n = q - 1; skip
                            Err(Error::BelowCorollary2Range { .. }) => continue,
                            Err(e) => return Err(e),
                        }
                    }
                }
            }
            let all_agree = results.iter().all(|r| r.agree);
            let params = json!({
                "kind": verify_name(*kind), "n": n, "q": q, "k": k,
                "prune": !no_prune, "threads": threads, "budget": opts.budget as u64,
            });
            let result = json!({
                "results": results.iter().map(sweep_value).collect::<Vec<_>>(),
                "all_agree": all_agree,
            });
            let status = if all_agree { EXIT_OK } else { EXIT_DISAGREE };
            Ok((envelope("verify", params, result), status))
        }
        Command::Uniformity { n, q, a } => {
            let c = match a {
                Some(text) => {
                    let c = Configuration::parse(*q, text)?;
                    if c.n() != *n {
                        return Err(Error::Parse(format!(
                            "--n {n} does not match the {} residues given",
                            c.n()
                        )));
                    }
                    c
                }
                None => Configuration::all_ones(*n, *q)?,
            };
            let r = uniformity_report_for(&c)?;
            let params = json!({ "n": n, "q": q, "a": a });
            let result = json!({
                "counts": strings(&r.counts),
                "min_fraction": rational_value(&r.min_fraction),
                "max_fraction": rational_value(&r.max_fraction),
                "max_deviation": rational_value(&r.max_deviation),
            });
            Ok((envelope("uniformity", params, result), EXIT_OK))
        }
    }
}

fn effective_limit(flag: Option<u32>) -> u32 {
    flag.or_else(|| {
        std::env::var("MODSUMS_LIMIT").ok().and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_ENUM_LIMIT)
}

/// "3" or an inclusive range "2..6".
fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<u32>, Error> {
    let bad = || Error::Parse(format!("bad value or range {text:?} (expected N or LO..HI)"));
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok(lo..=hi)
    } else {
        let v: u32 = text.trim().parse().map_err(|_| bad())?;
        Ok(v..=v)
    }
}

fn envelope(command: &str, parameters: Value, result: Value) -> Value {
    json!({ "command": command, "parameters": parameters, "result": result })
}

fn strings(values: &[BigUint]) -> Vec<String> {
    values.iter().map(|v| v.to_string()).collect()
}

fn dist_value(d: &SumDistribution) -> Value {
    json!({
        "q": d.q(),
        "counts": strings(d.counts()),
        "total": d.total().to_string(),
    })
}

fn instance_value(i: &ExtremalInstance) -> Value {
    json!({
        "configuration": { "q": i.configuration.q(), "a": i.configuration.residues() },
        "target": i.target.members(),
        "claimed": i.claimed.to_string(),
    })
}

fn sweep_value(r: &SweepResult) -> Value {
    json!({
        "kind": match r.kind {
            SweepKind::Max => "max",
            SweepKind::MinClass => "min-class",
            SweepKind::SignedMax => "signed-max",
        },
        "n": r.n,
        "q": r.q,
        "k": r.k,
        "formula": r.formula.to_string(),
        "observed": r.observed.to_string(),
        "witness": r.witness.as_ref().map(|(c, p)| json!({
            "a": c.residues(),
            "target": p.members(),
        })),
        "agree": r.agree,
    })
}

fn rational_value(r: &BigRational) -> Value {
    json!({ "num": r.numer().to_string(), "den": r.denom().to_string() })
}

fn kind_name(k: BoundKind) -> &'static str {
    match k {
        BoundKind::Theorem1 => "theorem1",
        BoundKind::Cor2 => "cor2",
        BoundKind::Cor3 => "cor3",
    }
}

fn extremal_name(k: ExtremalKind) -> &'static str {
    match k {
        ExtremalKind::Allones => "allones",
        ExtremalKind::Split => "split",
        ExtremalKind::Cor2 => "cor2",
    }
}

fn verify_name(k: VerifyKind) -> &'static str {
    match k {
        VerifyKind::Max => "max",
        VerifyKind::MinClass => "min-class",
        VerifyKind::SignedMax => "signed-max",
    }
}

/// Flattens the envelope into `path<TAB>value` lines; arrays index their
/// elements. Encodes exactly the same values as the JSON form.
fn to_tsv(value: &Value) -> String {
    let mut out = String::new();
    flatten("", value, &mut out);
    out
}

fn flatten(path: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                let child = if path.is_empty() { key.clone() } else { format!("{path}.{key}") };
                flatten(&child, v, out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{path}.{i}"), v, out);
            }
        }
        Value::Null => {
            out.push_str(path);
            out.push_str("\t\n");
        }
        Value::String(s) => {
            out.push_str(path);
            out.push('\t');
            out.push_str(s);
            out.push('\n');
        }
        other => {
            out.push_str(path);
            out.push('\t');
            out.push_str(&other.to_string());
            out.push('\n');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("4").unwrap(), 4..=4);
        assert_eq!(parse_range("2..6").unwrap(), 2..=6);
        assert!(parse_range("6..2").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn tsv_flattening_keeps_values() {
        let v = json!({ "a": { "b": ["1", "2"] }, "c": true, "d": null });
        let tsv = to_tsv(&v);
        assert_eq!(tsv, "a.b.0\t1\na.b.1\t2\nc\ttrue\nd\t\n");
    }

    #[test]
    fn bound_dispatch() {
        let (env, status) = dispatch(&Command::Bound {
            kind: BoundKind::Theorem1,
            n: 6,
            k: 1,
            q: 3,
        })
        .unwrap();
        assert_eq!(status, EXIT_OK);
        assert_eq!(env["result"]["value"], "22");
    }

    #[test]
    fn invalid_k_is_usage_error() {
        let err = dispatch(&Command::Bound {
            kind: BoundKind::Theorem1,
            n: 4,
            k: 5,
            q: 3,
        })
        .unwrap_err();
        assert!(err.to_string().contains("k exceeds q"));
    }
}
