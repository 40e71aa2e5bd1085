//! Double enumeration of both sides of the conjectured identity, cell by cell.
//!
//! A cell is one (check, n, type) triple. The type universe at each n is the
//! union of the keys seen on both sides, so a count missing on one side is
//! compared against zero rather than skipped.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::thread;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::classify::{alt_sum_type, length_type};
use crate::enumerate::{enumerate_partitions, AgInterpretation, Constraint};
use crate::error::{checked_add, Error, Result};
use crate::partition::{is_pure, support_size, Modulus, Partition};

/// Which side of the identity a table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Parts repeated at most m − 1 times, keyed by alternating sum type.
    P,
    /// No part divisible by m, keyed by length type.
    Q,
}

impl Side {
    fn constraint(self, m: Modulus) -> Constraint {
        match self {
            Side::P => Constraint::MaxRepeat(m.get() - 1),
            Side::Q => Constraint::NoPartsDivisibleBy(m.get()),
        }
    }

    fn key(self, p: &Partition, m: Modulus) -> Result<Vec<u32>> {
        Ok(match self {
            Side::P => alt_sum_type(p, m).into_vec(),
            Side::Q => length_type(p, m)?.into_vec(),
        })
    }
}

/// Counts per (type vector, n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub m: Modulus,
    pub side: Side,
    pub entries: BTreeMap<(Vec<u32>, u32), u64>,
}

impl CountTable {
    pub fn new(m: Modulus, side: Side) -> Self {
        Self { m, side, entries: BTreeMap::new() }
    }

    pub fn get(&self, ty: &[u32], n: u32) -> u64 {
        self.entries.get(&(ty.to_vec(), n)).copied().unwrap_or(0)
    }

    /// Types with a nonzero count at n, in ascending order.
    pub fn types_at(&self, n: u32) -> BTreeSet<Vec<u32>> {
        self.entries
            .keys()
            .filter(|(_, k)| *k == n)
            .map(|(t, _)| t.clone())
            .collect()
    }

    /// Number of partitions of n on this side.
    pub fn total_at(&self, n: u32) -> u64 {
        self.entries
            .iter()
            .filter(|((_, k), _)| *k == n)
            .map(|(_, &c)| c)
            .sum()
    }

    fn add_row(&mut self, n: u32, row: BTreeMap<Vec<u32>, u64>) {
        for (t, c) in row {
            self.entries.insert((t, n), c);
        }
    }
}

/// Counts the partitions of n on one side by type. The empty partition is
/// left out, so n = 0 gives an empty row.
pub fn count_row(m: Modulus, n: u32, side: Side) -> Result<BTreeMap<Vec<u32>, u64>> {
    let mut row = BTreeMap::new();
    if n == 0 {
        return Ok(row);
    }
    for p in enumerate_partitions(n, side.constraint(m))? {
        let c: &mut u64 = row.entry(side.key(&p, m)?).or_default();
        *c = checked_add(*c, 1, "partition count")?;
    }
    Ok(row)
}

/// Both count tables for 1 ≤ n ≤ max_n.
pub fn build_tables(m: Modulus, max_n: u32) -> Result<(CountTable, CountTable)> {
    let mut p = CountTable::new(m, Side::P);
    let mut q = CountTable::new(m, Side::Q);
    for n in 1..=max_n {
        p.add_row(n, count_row(m, n, Side::P)?);
        q.add_row(n, count_row(m, n, Side::Q)?);
    }
    Ok((p, q))
}

/// The partitions of n of the given type on one side, in enumeration order.
pub fn witnesses(m: Modulus, n: u32, ty: &[u32], side: Side) -> Result<Vec<Partition>> {
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    for p in enumerate_partitions(n, side.constraint(m))? {
        if side.key(&p, m)? == ty {
            out.push(p);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Mismatch,
}

/// The partitions behind both counts of a mismatched cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnesses {
    pub p_side: Vec<String>,
    pub q_side: Vec<String>,
}

impl Witnesses {
    fn from_lists(p: &[Partition], q: &[Partition]) -> Self {
        Self {
            p_side: p.iter().map(ToString::to_string).collect(),
            q_side: q.iter().map(ToString::to_string).collect(),
        }
    }
}

/// One compared quantity. `p_count` and `q_count` are the left and right
/// sides of whatever the check compares.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub check: String,
    pub m: u32,
    pub n: u32,
    #[serde(rename = "type")]
    pub ty: Vec<u32>,
    pub p_count: i64,
    pub q_count: i64,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Witnesses>,
}

impl Cell {
    pub fn new(check: &str, m: u32, n: u32, ty: Vec<u32>, p_count: i64, q_count: i64) -> Self {
        let status = if p_count == q_count { Status::Verified } else { Status::Mismatch };
        Self { check: check.to_string(), m, n, ty, p_count, q_count, status, witnesses: None }
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// Canonical one-line rendering used for hashing and diffing.
    pub fn canonical(&self) -> String {
        let ty: Vec<String> = self.ty.iter().map(ToString::to_string).collect();
        format!(
            "{}|{}|{}|({})|{}|{}",
            self.check,
            self.m,
            self.n,
            ty.join(","),
            self.p_count,
            self.q_count
        )
    }
}

fn to_i64(c: u64) -> Result<i64> {
    i64::try_from(c).map_err(|_| Error::Overflow("count exceeds i64"))
}

/// Outcome of a batch of checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub m: u32,
    pub n_min: u32,
    pub n_max: u32,
    pub flags: BTreeMap<String, String>,
    pub cells: Vec<Cell>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(m: u32, n_min: u32, n_max: u32) -> Self {
        Self { m, n_min, n_max, flags: BTreeMap::new(), cells: Vec::new(), elapsed_ms: 0 }
    }

    pub fn is_verified(&self) -> bool {
        self.cells.iter().all(Cell::is_verified)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| !c.is_verified())
    }

    pub fn first_mismatch(&self) -> Option<&Cell> {
        self.cells.iter().find(|c| !c.is_verified())
    }

    pub fn cells_for<'a>(&'a self, check: &'a str) -> impl Iterator<Item = &'a Cell> {
        self.cells.iter().filter(move |c| c.check == check)
    }

    pub fn flag(mut self, key: &str, value: impl ToString) -> Self {
        self.flags.insert(key.to_string(), value.to_string());
        self
    }

    /// Appends another report's cells and flags.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.cells.extend(other.cells);
        self.flags.extend(other.flags);
        self.elapsed_ms += other.elapsed_ms;
    }
}

/// Which types a verification run looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeFamily {
    #[default]
    All,
    /// Exactly one nonzero entry.
    Pure,
    /// (Σ, 2) and (2, Σ) with Σ ≥ 1; modulus 3 only.
    Thm31,
    /// One entry 1, one entry Σ ≥ 1, the rest 0; modulus at least 3.
    Thm32,
}

impl TypeFamily {
    pub fn validate(self, m: Modulus) -> Result<()> {
        match self {
            TypeFamily::Thm31 if m.get() != 3 => {
                Err(Error::Parameter(format!("the thm31 family is defined for modulus 3, got {m}")))
            }
            TypeFamily::Thm32 if m.get() < 3 => {
                Err(Error::Parameter(format!("the thm32 family needs modulus at least 3, got {m}")))
            }
            _ => Ok(()),
        }
    }

    pub fn contains(self, ty: &[u32]) -> bool {
        match self {
            TypeFamily::All => true,
            TypeFamily::Pure => is_pure(ty),
            TypeFamily::Thm31 => match *ty {
                [a, b] => (b == 2 && a >= 1) || (a == 2 && b >= 1),
                _ => false,
            },
            TypeFamily::Thm32 => support_size(ty) == 2 && ty.contains(&1),
        }
    }
}

impl fmt::Display for TypeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeFamily::All => "all",
            TypeFamily::Pure => "pure",
            TypeFamily::Thm31 => "thm31",
            TypeFamily::Thm32 => "thm32",
        })
    }
}

impl FromStr for TypeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Self::All),
            "pure" => Ok(Self::Pure),
            "thm31" => Ok(Self::Thm31),
            "thm32" => Ok(Self::Thm32),
            other => Err(Error::Parameter(format!("unknown type family {other:?}"))),
        }
    }
}

/// Runs `f` for every n, spreading the work over `jobs` scoped threads.
/// Results come back in the order of `ns`.
pub fn shard_by_n<T, F>(ns: &[u32], jobs: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u32) -> Result<T> + Sync,
{
    let jobs = jobs.clamp(1, ns.len().max(1));
    if jobs == 1 {
        return ns.iter().map(|&n| f(n)).collect();
    }
    let f = &f;
    let mut slots: Vec<Option<Result<T>>> = (0..ns.len()).map(|_| None).collect();
    thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                s.spawn(move || {
                    // strided so large n, which dominate the cost, spread evenly
                    (w..ns.len())
                        .step_by(jobs)
                        .map(|idx| (idx, f(ns[idx])))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for h in handles {
            for (idx, r) in h.join().expect("verification worker panicked") {
                slots[idx] = Some(r);
            }
        }
    });
    slots.into_iter().map(|r| r.expect("every index is filled")).collect()
}

/// Compares both sides at a single n for the types in `family`.
pub fn verify_n(m: Modulus, n: u32, family: TypeFamily, check: &str) -> Result<Vec<Cell>> {
    family.validate(m)?;
    let p = count_row(m, n, Side::P)?;
    let q = count_row(m, n, Side::Q)?;
    let keys: BTreeSet<&Vec<u32>> = p.keys().chain(q.keys()).filter(|t| family.contains(t)).collect();
    let mut cells = Vec::with_capacity(keys.len());
    for ty in keys {
        let pc = p.get(ty).copied().unwrap_or(0);
        let qc = q.get(ty).copied().unwrap_or(0);
        let mut cell = Cell::new(check, m.get(), n, ty.clone(), to_i64(pc)?, to_i64(qc)?);
        if !cell.is_verified() {
            let wp = witnesses(m, n, ty, Side::P)?;
            let wq = witnesses(m, n, ty, Side::Q)?;
            cell.witnesses = Some(Witnesses::from_lists(&wp, &wq));
        }
        cells.push(cell);
    }
    Ok(cells)
}

/// Verifies a family of types for 1 ≤ n ≤ max_n on `jobs` threads.
pub fn verify_family(m: Modulus, max_n: u32, family: TypeFamily, jobs: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    family.validate(m)?;
    let ns: Vec<u32> = (1..=max_n).collect();
    let check = format!("conjecture/{family}");
    let rows = shard_by_n(&ns, jobs, |n| verify_n(m, n, family, &check))?;
    let mut report = VerificationReport::new(m.get(), 1, max_n).flag("types", family);
    report.cells = rows.into_iter().flatten().collect();
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Every type cell for 1 ≤ n ≤ max_n.
pub fn verify_conjecture(m: Modulus, max_n: u32) -> Result<VerificationReport> {
    verify_family(m, max_n, TypeFamily::All, 1)
}

/// Restricted checks: pure types, the Glaisher marginals, the (Σ, 2) / (2, Σ)
/// family at modulus 3, the one-Σ-is-1 family, and the decomposition
/// a(Σe_i + e_j; n) = Σ_{k≥0} a(Σe_i; n − j − mk).
pub fn verify_special_cases(m: Modulus, max_n: u32) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut report = VerificationReport::new(m.get(), 1, max_n);
    let (p, q) = build_tables(m, max_n)?;
    let mu = m.get();

    for n in 1..=max_n {
        let keys: BTreeSet<Vec<u32>> = p.types_at(n).into_iter().chain(q.types_at(n)).collect();
        let mut push = |check: &str, ty: &Vec<u32>| -> Result<()> {
            let pc = to_i64(p.get(ty, n))?;
            let qc = to_i64(q.get(ty, n))?;
            let mut cell = Cell::new(check, mu, n, ty.clone(), pc, qc);
            if !cell.is_verified() {
                let wp = witnesses(m, n, ty, Side::P)?;
                let wq = witnesses(m, n, ty, Side::Q)?;
                cell.witnesses = Some(Witnesses::from_lists(&wp, &wq));
            }
            report.cells.push(cell);
            Ok(())
        };
        for ty in &keys {
            if TypeFamily::Pure.contains(ty) {
                push("pure", ty)?;
            }
            if mu == 3 && TypeFamily::Thm31.contains(ty) {
                push("thm31", ty)?;
            }
            if mu >= 3 && TypeFamily::Thm32.contains(ty) {
                push("thm32", ty)?;
            }
        }

        // z_1 = … = z_{m−1}: totals of Σ against numbers of parts
        let mut marginal: BTreeMap<u32, (u64, u64)> = BTreeMap::new();
        for ((ty, k), &c) in p.entries.iter().filter(|((_, k), _)| *k == n) {
            debug_assert_eq!(*k, n);
            marginal.entry(ty.iter().sum()).or_default().0 += c;
        }
        for ((ty, _), &c) in q.entries.iter().filter(|((_, k), _)| *k == n) {
            marginal.entry(ty.iter().sum()).or_default().1 += c;
        }
        for (total, (a, b)) in marginal {
            report.cells.push(Cell::new("glaisher_marginal", mu, n, vec![total], to_i64(a)?, to_i64(b)?));
        }
        report.cells.push(Cell::new(
            "glaisher_total",
            mu,
            n,
            vec![],
            to_i64(p.total_at(n))?,
            to_i64(q.total_at(n))?,
        ));
    }

    if mu >= 3 {
        for cell in sigma_one_decomposition(&p, max_n)? {
            report.cells.push(cell);
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// a(Σe_i + e_j; n) against Σ_{k≥0} a(Σe_i; n − j − mk), both read from the P-side table.
fn sigma_one_decomposition(p: &CountTable, max_n: u32) -> Result<Vec<Cell>> {
    let m = p.m.get();
    let len = p.m.type_len();
    let mut cells = Vec::new();
    for n in 1..=max_n {
        for i in 0..len {
            for j in 0..len {
                if i == j {
                    continue;
                }
                let jj = j as u32 + 1;
                for sigma in 1..=n {
                    let mut mixed = vec![0; len];
                    mixed[i] = sigma;
                    mixed[j] += 1;
                    let mut pure = vec![0; len];
                    pure[i] = sigma;
                    let lhs = p.get(&mixed, n);
                    let mut rhs = 0u64;
                    let mut w = n.checked_sub(jj);
                    while let Some(rest) = w {
                        rhs = checked_add(rhs, p.get(&pure, rest), "decomposition sum")?;
                        w = rest.checked_sub(m);
                    }
                    if lhs != 0 || rhs != 0 {
                        cells.push(Cell::new("thm32_decomposition", m, n, mixed, to_i64(lhs)?, to_i64(rhs)?));
                    }
                }
            }
        }
    }
    Ok(cells)
}

/// Buckets of the P side at one n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub total: u64,
    pub pure: u64,
    /// Mixed types in the (Σ, 2) / (2, Σ) family or the one-Σ-is-1 family.
    pub known_families: u64,
    pub other_mixed: u64,
}

/// Splits the P-side partitions of n into pure, known-family and other mixed types.
pub fn census(m: Modulus, n: u32) -> Result<Census> {
    let row = count_row(m, n, Side::P)?;
    let mut c = Census { total: 0, pure: 0, known_families: 0, other_mixed: 0 };
    for (ty, k) in row {
        c.total += k;
        if is_pure(&ty) {
            c.pure += k;
        } else if (m.get() == 3 && TypeFamily::Thm31.contains(&ty))
            || (m.get() >= 3 && TypeFamily::Thm32.contains(&ty))
        {
            c.known_families += k;
        } else {
            c.other_mixed += k;
        }
    }
    Ok(c)
}

/// P-side membership for the Andrews–Gordon companion with parameters (d, i):
/// repetition at most 2d, Σ_i = Σ_{2d+1−i} = 0, and a nonzero type.
fn rr_p_side_accepts(d: u32, i: u32, ty: &[u32]) -> bool {
    let a = (i - 1) as usize;
    let b = (2 * d - i) as usize;
    ty[a] == 0 && ty[b] == 0 && ty.iter().any(|&x| x != 0)
}

fn ag_constraint(d: u32, i: u32, interpretation: AgInterpretation) -> Result<Constraint> {
    let c = Constraint::AndrewsGordon { d, i, interpretation };
    c.validate()?;
    Ok(c)
}

/// Both lists for the Andrews–Gordon companion at n: the gap-condition
/// partitions and the matching P-side partitions. Empty for n = 0.
pub fn rr_witnesses(
    d: u32,
    i: u32,
    n: u32,
    interpretation: AgInterpretation,
) -> Result<(Vec<Partition>, Vec<Partition>)> {
    let c = ag_constraint(d, i, interpretation)?;
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let m = Modulus::new(2 * d + 1)?;
    let ag: Vec<Partition> = enumerate_partitions(n, c)?.collect();
    let mut p = Vec::new();
    for part in enumerate_partitions(n, Constraint::MaxRepeat(2 * d))? {
        if rr_p_side_accepts(d, i, alt_sum_type(&part, m).as_slice()) {
            p.push(part);
        }
    }
    Ok((ag, p))
}

/// Compares the Andrews–Gordon-constrained count with the P-side count for 0 ≤ n ≤ max_n.
/// The n = 0 cell is 0 = 0 because the empty partition is excluded from both sides.
pub fn verify_rr_companions(
    d: u32,
    i: u32,
    max_n: u32,
    interpretation: AgInterpretation,
) -> Result<VerificationReport> {
    let start = Instant::now();
    ag_constraint(d, i, interpretation)?;
    let m = 2 * d + 1;
    let mut report = VerificationReport::new(m, 0, max_n)
        .flag("ag_interpretation", interpretation)
        .flag("d", d)
        .flag("i", i);
    for n in 0..=max_n {
        let (ag, p) = rr_witnesses(d, i, n, interpretation)?;
        let mut cell = Cell::new("rr_companion", m, n, vec![d, i], ag.len() as i64, p.len() as i64);
        if !cell.is_verified() {
            cell.witnesses = Some(Witnesses::from_lists(&p, &ag));
        }
        report.cells.push(cell);
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
