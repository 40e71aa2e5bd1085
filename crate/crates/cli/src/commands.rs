//! Subcommand bodies. Each returns whether everything it checked was verified.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};

use modpart_core::enumerate::AgInterpretation;
use modpart_core::gf::{factorized_q_generator, lemma_term, pure_type_generator_auto, Lemma, TermSpec};
use modpart_core::partition::is_mixed;
use modpart_core::qdiff::run_qdiff_checks;
use modpart_core::verify::{
    build_tables, count_row, rr_witnesses, shard_by_n, verify_n, verify_rr_companions, witnesses, Side,
    TypeFamily, VerificationReport,
};
use modpart_core::{Modulus, TruncatedSeries};

use crate::cache::{ScanCache, ScanRecord};

fn write_report(report: &VerificationReport, out: Option<&Path>) -> Result<()> {
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(report)?;
        fs::write(path, json + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn type_label(ty: &[u32]) -> String {
    let parts: Vec<String> = ty.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub fn verify(modulus: u32, max_n: u32, types: TypeFamily, out: Option<&Path>, jobs: usize, resume: bool) -> Result<bool> {
    let start = Instant::now();
    let m = Modulus::new(modulus)?;
    types.validate(m)?;
    if jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    let flags = BTreeMap::from([("types".to_string(), types.to_string())]);
    let mut cache = ScanCache::open(&ScanCache::dir_from_env())?;

    let mut per_n: BTreeMap<u32, ScanRecord> = BTreeMap::new();
    let mut todo = Vec::new();
    for n in 1..=max_n {
        match cache.get(modulus, n, &flags).filter(|r| resume && r.reusable()) {
            Some(rec) => {
                per_n.insert(n, rec.clone());
            }
            None => todo.push(n),
        }
    }
    let reused = per_n.len();
    let check = format!("conjecture/{types}");
    let fresh = shard_by_n(&todo, jobs, |n| {
        verify_n(m, n, types, &check).map(|cells| ScanRecord::new(modulus, n, flags.clone(), cells))
    })?;
    cache.append(fresh.clone())?;
    for rec in fresh {
        per_n.insert(rec.n, rec);
    }

    let mut report = VerificationReport::new(modulus, 1, max_n);
    report.flags = flags;
    report.cells = per_n.into_values().flat_map(|r| r.cells).collect();
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    write_report(&report, out)?;

    let bad: Vec<_> = report.mismatches().collect();
    println!(
        "modulus {modulus}, types {types}, 1 <= n <= {max_n}: {} cells, {} mismatches ({} values of n from cache)",
        report.cells.len(),
        bad.len(),
        reused
    );
    for c in &bad {
        println!("MISMATCH n={} type {}: P {} Q {}", c.n, type_label(&c.ty), c.p_count, c.q_count);
    }
    Ok(bad.is_empty())
}

pub fn table(modulus: u32, n: u32, mixed_only: bool) -> Result<bool> {
    let m = Modulus::new(modulus)?;
    let p = count_row(m, n, Side::P)?;
    let q = count_row(m, n, Side::Q)?;
    let mut rows: Vec<(Vec<u32>, u64, u64)> = p
        .keys()
        .chain(q.keys())
        .filter(|t| !mixed_only || is_mixed(t))
        .map(|t| (t.clone(), p.get(t).copied().unwrap_or(0), q.get(t).copied().unwrap_or(0)))
        .collect();
    rows.sort_by(|a, b| b.1.max(b.2).cmp(&a.1.max(a.2)).then_with(|| a.0.cmp(&b.0)));
    rows.dedup_by(|a, b| a.0 == b.0);

    println!("modulus {modulus}, n = {n}{}", if mixed_only { ", mixed types" } else { "" });
    let mut all_equal = true;
    for (ty, pc, qc) in rows {
        all_equal &= pc == qc;
        println!("{} P {pc} Q {qc}{}", type_label(&ty), if pc == qc { "" } else { " MISMATCH" });
        for part in witnesses(m, n, &ty, Side::P)? {
            println!("  P {part}");
        }
        for part in witnesses(m, n, &ty, Side::Q)? {
            println!("  Q {part}");
        }
    }
    Ok(all_equal)
}

fn table_series(m: Modulus, trunc: u32, side: Side) -> Result<TruncatedSeries> {
    let (p, q) = build_tables(m, trunc)?;
    let table = if side == Side::P { p } else { q };
    let mut terms = vec![(vec![0; m.type_len()], 0, 1)];
    for ((ty, n), &c) in &table.entries {
        terms.push((ty.clone(), *n, i64::try_from(c)?));
    }
    Ok(TruncatedSeries::from_terms(m.type_len(), trunc, terms)?)
}

fn parse_lemma(spec: &str) -> Result<TermSpec> {
    let fields: Vec<&str> = spec.split(':').collect();
    let [name, n, index] = fields.as_slice() else {
        bail!("expected lemma:<L34|L35|L36|L37>:<n>:<index>, got lemma:{spec}");
    };
    let lemma = match *name {
        "L34" => Lemma::L34,
        "L35" => Lemma::L35,
        "L36" => Lemma::L36,
        "L37" => Lemma::L37,
        other => bail!("unknown lemma {other:?}"),
    };
    let n = n.parse().with_context(|| format!("bad n {n:?}"))?;
    let index = index.parse().with_context(|| format!("bad index {index:?}"))?;
    Ok(TermSpec::new(lemma, n, index))
}

pub fn series(modulus: u32, trunc: u32, which: &str) -> Result<bool> {
    let m = Modulus::new(modulus)?;
    let s = match which {
        "p" => table_series(m, trunc, Side::P)?,
        "q" => table_series(m, trunc, Side::Q)?,
        "factorized" => factorized_q_generator(m, trunc)?,
        "pure" => pure_type_generator_auto(m, trunc)?,
        other => match other.strip_prefix("lemma:") {
            Some(spec) => {
                if modulus != 3 {
                    bail!("lemma terms are defined for modulus 3");
                }
                lemma_term(parse_lemma(spec)?, trunc)?
            }
            None => bail!("unknown --which {other:?}; expected p, q, factorized, pure or lemma:..."),
        },
    };
    print!("{}", s.dump());
    Ok(true)
}

pub fn qdiff(max_length: u32, trunc: u32, out: Option<&Path>) -> Result<bool> {
    let report = run_qdiff_checks(max_length, trunc)?;
    let mut groups: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for c in &report.cells {
        let g = groups.entry(c.check.as_str()).or_default();
        g.0 += 1;
        if !c.is_verified() {
            g.1 += 1;
        }
    }
    for (check, (total, bad)) in &groups {
        println!("{} {check}: {total} cells, {bad} mismatches", if *bad == 0 { "PASS" } else { "FAIL" });
    }
    for (k, v) in &report.flags {
        println!("flag {k}: {v}");
    }
    write_report(&report, out)?;
    Ok(report.is_verified())
}

pub fn rrag(d: u32, i: u32, max_n: u32, interpretation: AgInterpretation, show: bool, out: Option<&Path>) -> Result<bool> {
    let report = verify_rr_companions(d, i, max_n, interpretation)?;
    println!("d = {d}, i = {i}, modulus {}, {interpretation} reading", 2 * d + 1);
    for c in &report.cells {
        println!(
            "{} n={} gap-side {} P-side {}",
            if c.is_verified() { "PASS" } else { "FAIL" },
            c.n,
            c.p_count,
            c.q_count
        );
        if show {
            let (ag, p) = rr_witnesses(d, i, c.n, interpretation)?;
            let join = |v: &[modpart_core::Partition]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            println!("  gap-side: {}", join(&ag));
            println!("  P-side: {}", join(&p));
        }
    }
    write_report(&report, out)?;
    Ok(report.is_verified())
}
