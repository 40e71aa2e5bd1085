//! The modulus-3 recurrence system for partitions with every part repeated at
//! most twice, x = z1 marking Σ₁ and y = z2 marking Σ₂.
//!
//! a_L(Σ₁, Σ₂; n) counts such partitions of n with exactly L parts. Removing
//! the smallest part k from every part leaves a partition of length L − 1 or
//! L − 2 and changes only the difference at position L, which feeds Σ_r for
//! L ≡ r (mod 3), r ∈ {1, 2}, and no Σ when r = 0.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use crate::classify::alt_sum_type;
use crate::enumerate::{enumerate_partitions, Constraint};
use crate::error::{checked_add, Error, Result};
use crate::gf::factorized_q_generator;
use crate::partition::Modulus;
use crate::qseries::{geometric_factor, Monomial, TruncatedSeries};
use crate::verify::{Cell, VerificationReport};

const X: usize = 0;
const Y: usize = 1;

/// Key of a count: (Σ₁, Σ₂, n).
pub type CountKey = (u32, u32, u32);

/// a_L(Σ₁, Σ₂; n) for every length 0 ≤ L ≤ max_length and weight n ≤ trunc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedLengthCountTable {
    pub max_length: u32,
    pub trunc: u32,
    by_length: Vec<BTreeMap<CountKey, u64>>,
}

impl FixedLengthCountTable {
    fn empty(max_length: u32, trunc: u32) -> Self {
        Self { max_length, trunc, by_length: vec![BTreeMap::new(); max_length as usize + 1] }
    }

    /// The nonzero counts at one length.
    pub fn length(&self, l: u32) -> Option<&BTreeMap<CountKey, u64>> {
        self.by_length.get(l as usize)
    }

    pub fn get(&self, l: u32, s1: u32, s2: u32, n: u32) -> u64 {
        self.length(l).and_then(|t| t.get(&(s1, s2, n))).copied().unwrap_or(0)
    }

    /// Σ_L a_L(Σ₁, Σ₂; n) over the stored lengths.
    pub fn total(&self, s1: u32, s2: u32, n: u32) -> u64 {
        (0..=self.max_length).map(|l| self.get(l, s1, s2, n)).sum()
    }

    fn add(&mut self, l: u32, key: CountKey, c: u64) -> Result<()> {
        let slot = self.by_length[l as usize].entry(key).or_default();
        *slot = checked_add(*slot, c, "fixed-length count")?;
        Ok(())
    }
}

/// Fills a_0..a_N from a_0 = {(0,0,0) → 1} by the three recurrences.
pub fn count_by_recurrence(max_length: u32, trunc: u32) -> Result<FixedLengthCountTable> {
    let mut table = FixedLengthCountTable::empty(max_length, trunc);
    table.add(0, (0, 0, 0), 1)?;
    for l in 1..=max_length {
        let (d1, d2) = match l % 3 {
            1 => (1, 0),
            2 => (0, 1),
            _ => (0, 0),
        };
        let sources: Vec<(CountKey, u64)> = [l.checked_sub(1), l.checked_sub(2)]
            .into_iter()
            .flatten()
            .flat_map(|prev| table.by_length[prev as usize].iter().map(|(&k, &c)| (k, c)).collect::<Vec<_>>())
            .collect();
        for ((s1, s2, w), c) in sources {
            let mut k = 1u32;
            while let Some(weight) = l.checked_mul(k).and_then(|lk| w.checked_add(lk)).filter(|&x| x <= trunc) {
                table.add(l, (s1 + d1 * k, s2 + d2 * k, weight), c)?;
                k += 1;
            }
        }
    }
    Ok(table)
}

/// The same table read off a direct enumeration of partitions with parts repeated at most twice.
pub fn count_by_enumeration(max_length: u32, trunc: u32) -> Result<FixedLengthCountTable> {
    let mut table = FixedLengthCountTable::empty(max_length, trunc);
    table.add(0, (0, 0, 0), 1)?;
    for n in 1..=trunc {
        for p in enumerate_partitions(n, Constraint::MaxRepeat(2))? {
            let l = p.len() as u32;
            if l > max_length {
                continue;
            }
            let t = alt_sum_type(&p, Modulus::THREE);
            table.add(l, (t.as_slice()[0], t.as_slice()[1], n), 1)?;
        }
    }
    Ok(table)
}

/// A_N or P_N as a series in x, y, q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSumSeries {
    pub index: u32,
    pub series: TruncatedSeries,
}

fn var_for(l: u32) -> Option<usize> {
    match l % 3 {
        1 => Some(X),
        2 => Some(Y),
        _ => None,
    }
}

fn v_monomial(l: u32) -> Vec<u32> {
    let mut z = vec![0; 2];
    if let Some(i) = var_for(l) {
        z[i] = 1;
    }
    z
}

/// v q^L / (1 − v q^L) with v = x, y or 1 as L ≡ 1, 2, 0 (mod 3).
fn at_least_one(l: u32, trunc: u32) -> Result<TruncatedSeries> {
    Ok(geometric_factor(2, var_for(l), l, trunc)?.shift(&v_monomial(l), l)?.truncated(trunc))
}

/// A_0..A_N with A_0 = 1 and A_L = (A_{L−1} + A_{L−2}) · v q^L / (1 − v q^L).
pub fn a_series_all(max_index: u32, trunc: u32) -> Result<Vec<PartialSumSeries>> {
    let mut out: Vec<TruncatedSeries> = vec![TruncatedSeries::one(2, trunc)];
    for l in 1..=max_index {
        let prev = out[l as usize - 1].clone();
        let sum = match l.checked_sub(2) {
            Some(p2) => prev.add(&out[p2 as usize])?,
            None => prev,
        };
        out.push(sum.mul(&at_least_one(l, trunc)?)?);
    }
    Ok(out.into_iter().enumerate().map(|(i, s)| PartialSumSeries { index: i as u32, series: s }).collect())
}

/// A_N alone.
pub fn a_series(index: u32, trunc: u32) -> Result<PartialSumSeries> {
    Ok(a_series_all(index, trunc)?.pop().expect("at least A_0"))
}

/// P_0..P_N from P_0 = 1, P_1 = 1/(1 − xq), P_2 = 1/((1 − xq)(1 − yq²)) and
/// P_L = P_{L−1}/(1 − vq^L) − P_{L−3} · vq^L/(1 − vq^L) for L ≥ 3.
pub fn p_series_all(max_index: u32, trunc: u32) -> Result<Vec<PartialSumSeries>> {
    let p0 = TruncatedSeries::one(2, trunc);
    let p1 = geometric_factor(2, Some(X), 1, trunc)?;
    let p2 = p1.mul(&geometric_factor(2, Some(Y), 2, trunc)?)?;
    let mut out = vec![p0, p1, p2];
    for l in 3..=max_index {
        let g = geometric_factor(2, var_for(l), l, trunc)?;
        let keep = out[l as usize - 1].mul(&g)?;
        let drop = out[l as usize - 3].mul(&at_least_one(l, trunc)?)?;
        out.push(keep.sub(&drop)?);
    }
    out.truncate(max_index as usize + 1);
    Ok(out.into_iter().enumerate().map(|(i, s)| PartialSumSeries { index: i as u32, series: s }).collect())
}

/// P_N alone.
pub fn p_series(index: u32, trunc: u32) -> Result<PartialSumSeries> {
    Ok(p_series_all(index, trunc)?.pop().expect("at least P_0"))
}

fn table_length_series(table: &FixedLengthCountTable, l: u32) -> Result<TruncatedSeries> {
    let terms = table
        .length(l)
        .into_iter()
        .flatten()
        .map(|(&(s1, s2, n), &c)| i64::try_from(c).map(|c| (vec![s1, s2], n, c)))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Overflow("count exceeds i64"))?;
    TruncatedSeries::from_terms(2, table.trunc, terms)
}

/// Coefficient-wise comparison over the union of monomials; the constant term is always included.
pub fn compare_series(check: &str, m: u32, lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Result<Vec<Cell>> {
    let mut keys: BTreeSet<Monomial> = lhs.terms().map(|(k, _)| k.clone()).collect();
    keys.extend(rhs.terms().map(|(k, _)| k.clone()));
    keys.insert(Monomial::new(vec![0; lhs.num_z()], 0));
    keys.into_iter()
        .map(|k| Ok(Cell::new(check, m, k.q, k.z.clone(), lhs.coeff(&k.z, k.q)?, rhs.coeff(&k.z, k.q)?)))
        .collect()
}

fn first_difference(lhs: &TruncatedSeries, rhs: &TruncatedSeries) -> Result<Option<(Monomial, i64, i64)>> {
    let diff = lhs.sub(rhs)?;
    let first = diff.terms().next().map(|(k, _)| k.clone());
    first.map(|k| Ok((k.clone(), lhs.coeff(&k.z, k.q)?, rhs.coeff(&k.z, k.q)?))).transpose()
}

/// P_N against the product over residues 1 and 2 of partitions into parts of
/// that residue, x and y marking the number of parts. The displayed
/// fixed-point equation P = P/((1 − xq)(1 − yq²)) is also evaluated and its
/// outcome recorded in the flags.
pub fn check_conjecture_4_4(trunc: u32, stabilization_index: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    if stabilization_index < trunc {
        return Err(Error::Parameter(format!(
            "P_{stabilization_index} is not stable up to q^{trunc}; use an index of at least {trunc}"
        )));
    }
    let p = p_series(stabilization_index, trunc)?.series;
    let q = factorized_q_generator(Modulus::THREE, trunc)?;
    let fixed_point = p.mul(&geometric_factor(2, Some(X), 1, trunc)?)?.mul(&geometric_factor(2, Some(Y), 2, trunc)?)?;
    let literal = match first_difference(&p, &fixed_point)? {
        None => format!("holds to q^{trunc}"),
        Some((k, a, b)) => format!("fails at x^{} y^{} q^{}: {} vs {}", k.z[0], k.z[1], k.q, a, b),
    };
    let mut report = VerificationReport::new(3, 0, trunc)
        .flag("conjecture_4_4_reading", "P_N equals the product of 1/(1-x q^(3k+1)) and 1/(1-y q^(3k+2))")
        .flag("conjecture_4_4_literal", literal)
        .flag("a_n_constant", "A_0 = 1 and A_N has no constant term for N >= 1")
        .flag("stabilization_index", stabilization_index);
    report.cells = compare_series("conjecture_4_4", 3, &p, &q)?;
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// The cross-checks of the recurrence system for lengths up to max_length and weights up to trunc.
pub fn run_qdiff_checks(max_length: u32, trunc: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let rec = count_by_recurrence(max_length, trunc)?;
    let enu = count_by_enumeration(max_length, trunc)?;
    let a = a_series_all(max_length, trunc)?;
    let p = p_series_all(max_length, trunc)?;

    let mut report = VerificationReport::new(3, 0, trunc).flag("max_length", max_length);
    let mut enum_partial = TruncatedSeries::zero(2, trunc);
    for l in 0..=max_length {
        let from_rec = table_length_series(&rec, l)?;
        let from_enum = table_length_series(&enu, l)?;
        report.cells.extend(compare_series(&format!("recurrence_vs_enumeration/L={l}"), 3, &from_rec, &from_enum)?);
        report.cells.extend(compare_series(&format!("a_series_vs_recurrence/L={l}"), 3, &a[l as usize].series, &from_rec)?);
        enum_partial = enum_partial.add(&from_enum)?;
        report.cells.extend(compare_series(&format!("p_series_vs_enumeration/N={l}"), 3, &p[l as usize].series, &enum_partial)?);
    }
    let conj = check_conjecture_4_4(trunc, trunc.max(max_length))?;
    report.absorb(conj);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
