//! Reference implementations written independently of the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use modpart_core::classify::{basic_units, case_classify, unit_distance, SpecialKind, UnitCase};
use modpart_core::gf::{Lemma, SpecialPosition, TermSpec};
use modpart_core::{Modulus, Partition};

/// Every partition of n as a weakly decreasing vector, by plain recursion.
pub fn brute_partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn max_repeat(parts: &[u32]) -> usize {
    let mut best = 0;
    let mut run = 0;
    for i in 0..parts.len() {
        run = if i > 0 && parts[i] == parts[i - 1] { run + 1 } else { 1 };
        best = best.max(run);
    }
    best
}

/// (Σ₁, …, Σ_{m−1}) straight from the definition on the zero-padded list.
pub fn alt_sums(parts: &[u32], m: u32) -> Vec<u32> {
    let m = m as usize;
    let blocks = parts.len().div_ceil(m);
    let at = |i: usize| parts.get(i).copied().unwrap_or(0);
    (1..m)
        .map(|j| (0..blocks).map(|b| at(b * m + j - 1) - at(b * m + j)).sum())
        .collect()
}

/// Number of parts in each nonzero residue class mod m.
pub fn residue_counts(parts: &[u32], m: u32) -> Vec<u32> {
    let mut v = vec![0; m as usize - 1];
    for &p in parts {
        let r = p % m;
        if r > 0 {
            v[r as usize - 1] += 1;
        }
    }
    v
}

/// p(n) for 0 ≤ n ≤ max by Euler's pentagonal number recurrence.
pub fn pentagonal_counts(max: usize) -> Vec<i64> {
    let mut p = vec![0i64; max + 1];
    p[0] = 1;
    for n in 1..=max {
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            p[n] += sign * p[n - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= n {
                p[n] += sign * p[n - g2];
            }
            k += 1;
        }
    }
    p
}

/// table[n][k] = partitions of n into k odd parts, by a knapsack recurrence.
pub fn odd_parts_by_count(max: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; max + 1]; max + 1];
    t[0][0] = 1;
    for part in (1..=max).step_by(2) {
        for n in part..=max {
            for k in 1..=n {
                t[n][k] += t[n - part][k - 1];
            }
        }
    }
    t
}

/// P-side count by type from brute force.
pub fn p_side_row(n: u32, m: u32) -> BTreeMap<Vec<u32>, u64> {
    let mut row = BTreeMap::new();
    for p in brute_partitions(n) {
        if max_repeat(&p) < m as usize {
            *row.entry(alt_sums(&p, m)).or_default() += 1;
        }
    }
    row
}

/// Q-side count by type from brute force.
pub fn q_side_row(n: u32, m: u32) -> BTreeMap<Vec<u32>, u64> {
    let mut row = BTreeMap::new();
    for p in brute_partitions(n) {
        if p.iter().all(|&x| x % m != 0) {
            *row.entry(residue_counts(&p, m)).or_default() += 1;
        }
    }
    row
}

/// Parses a `7+4+3` list into parts.
pub fn parts(s: &str) -> Vec<u32> {
    s.split('+').map(|t| t.trim().parse().unwrap()).collect()
}

/// One row of a listing: type, P-side partitions, Q-side partitions.
pub type Row = (Vec<u32>, Vec<&'static str>, Vec<&'static str>);

/// All mixed-type rows for modulus 3 at n = 11.
pub fn mixed_rows_m3_n11() -> Vec<Row> {
    vec![
        (vec![1, 2], vec!["3+3+2+2+1", "5+4+2", "4+4+2+1", "4+3+2+1+1"], vec!["8+2+1", "7+2+2", "5+5+1", "5+4+2"]),
        (vec![3, 1], vec!["6+3+2", "5+3+2+1", "5+2+2+1+1", "4+3+2+2"], vec!["8+1+1+1", "7+2+1+1", "5+4+1+1", "4+4+2+1"]),
        (vec![2, 3], vec!["6+4+1", "5+4+1+1"], vec!["5+2+2+1+1", "4+2+2+2+1"]),
        (vec![4, 2], vec!["7+3+1", "6+3+1+1"], vec!["5+2+1+1+1+1", "4+2+2+1+1+1"]),
        (vec![6, 1], vec!["8+2+1", "7+2+1+1"], vec!["5+1+1+1+1+1+1", "4+2+1+1+1+1+1"]),
        (vec![1, 5], vec!["6+5"], vec!["2+2+2+2+2+1"]),
        (vec![3, 4], vec!["7+4"], vec!["2+2+2+2+1+1+1"]),
        (vec![5, 3], vec!["8+3"], vec!["2+2+2+1+1+1+1+1"]),
        (vec![7, 2], vec!["9+2"], vec!["2+2+1+1+1+1+1+1+1"]),
        (vec![9, 1], vec!["10+1"], vec!["2+1+1+1+1+1+1+1+1+1"]),
    ]
}

/// All mixed-type rows for modulus 4 at n = 10.
pub fn mixed_rows_m4_n10() -> Vec<Row> {
    vec![
        (vec![1, 1, 1], vec!["4+3+2+1", "3+3+2+1+1", "3+2+2+1+1+1"], vec!["5+3+2", "6+3+1", "7+2+1"]),
        (vec![2, 2, 0], vec!["5+3+1+1", "4+3+1+1+1"], vec!["5+2+2+1", "6+2+1+1"]),
        (vec![3, 0, 1], vec!["5+2+2+1", "4+2+2+1+1"], vec!["5+3+1+1", "7+1+1+1"]),
        (vec![4, 1, 0], vec!["6+2+1+1", "5+2+1+1+1"], vec!["5+2+1+1+1", "6+1+1+1+1"]),
        (vec![0, 2, 2], vec!["4+4+2"], vec!["3+3+2+2"]),
        (vec![1, 0, 3], vec!["4+3+3"], vec!["3+3+3+1"]),
        (vec![1, 3, 1], vec!["5+4+1"], vec!["3+2+2+2+1"]),
        (vec![2, 1, 2], vec!["5+3+2"], vec!["3+3+2+1+1"]),
        (vec![2, 4, 0], vec!["6+4"], vec!["2+2+2+2+1+1"]),
        (vec![3, 2, 1], vec!["6+3+1"], vec!["3+2+2+1+1+1"]),
        (vec![4, 0, 2], vec!["6+2+2"], vec!["3+3+1+1+1+1"]),
        (vec![4, 3, 0], vec!["7+3"], vec!["2+2+2+1+1+1+1"]),
        (vec![5, 1, 1], vec!["7+2+1"], vec!["3+2+1+1+1+1+1"]),
        (vec![6, 2, 0], vec!["8+2"], vec!["2+2+1+1+1+1+1+1"]),
        (vec![7, 0, 1], vec!["8+1+1"], vec!["3+1+1+1+1+1+1+1"]),
        (vec![8, 1, 0], vec!["9+1"], vec!["2+1+1+1+1+1+1+1+1"]),
    ]
}

/// Andrews–Gordon side and P side for (d, i) = (2, 2) at n = 11.
pub fn companion_lists_d2_i2() -> (Vec<&'static str>, Vec<&'static str>) {
    (
        vec!["11", "10+1", "9+2", "8+3", "7+4", "7+3+1", "6+4+1"],
        vec!["3+2+2+2+2", "3+2+2+2+1+1", "4+2+2+2+1", "7+1+1+1+1", "5+2+2+2", "8+1+1+1", "11"],
    )
}

/// Andrews–Gordon side and P side for (d, i) = (2, 1) at n = 11.
pub fn companion_lists_d2_i1() -> (Vec<&'static str>, Vec<&'static str>) {
    (vec!["11", "9+2", "8+3", "7+4"], vec!["3+3+3+1+1", "4+4+1+1+1", "4+4+3", "5+5+1"])
}

/// The listed partitions as sorted part vectors.
pub fn sorted_lists(list: &[&str]) -> Vec<Vec<u32>> {
    let mut v: Vec<Vec<u32>> = list.iter().map(|s| parts(s)).collect();
    v.sort();
    v
}

/// Case, length, and distance or special-unit position of a (Σ, 2) partition.
pub type Key = (UnitCase, u32, Option<u32>, Option<SpecialPosition>);

/// Coefficients z^Σ q^n of the (Σ, 2) partitions in P up to weight trunc, split by class.
pub fn lemma_class_counts(trunc: u32) -> BTreeMap<Key, BTreeMap<(u32, u32), i64>> {
    let m3 = Modulus::new(3).unwrap();
    let mut out: BTreeMap<Key, BTreeMap<(u32, u32), i64>> = BTreeMap::new();
    for n in 1..=trunc {
        for parts in brute_partitions(n) {
            if max_repeat(&parts) > 2 {
                continue;
            }
            let sums = alt_sums(&parts, 3);
            if sums[1] != 2 {
                continue;
            }
            let p = Partition::new(parts.clone()).unwrap();
            let case = case_classify(&p).unwrap();
            let len = parts.len() as u32;
            let key = match case {
                UnitCase::CaseA => (case, len, Some(unit_distance(&p).unwrap()), None),
                UnitCase::CaseB => {
                    let units = basic_units(&p, m3);
                    let last = units.last().unwrap().special == SpecialKind::Gap2;
                    let pos = if last { SpecialPosition::Last } else { SpecialPosition::NotLast };
                    (case, len, None, Some(pos))
                }
                UnitCase::Neither => panic!("{p} has type (Σ,2) but is in neither case"),
            };
            *out.entry(key).or_default().entry((sums[0], n)).or_default() += 1;
        }
    }
    out
}

pub fn term_key(spec: &TermSpec) -> Key {
    let case = if spec.lemma == Lemma::L37 { UnitCase::CaseB } else { UnitCase::CaseA };
    (case, spec.length(), spec.distance(), spec.special_position())
}

/// Checks listed rows against the library tables and witness lists.
pub fn rows_match(m: u32, n: u32, rows: &[Row]) -> Result<(), String> {
    use modpart_core::partition::is_mixed;
    use modpart_core::verify::{build_tables, witnesses, Side};
    use std::collections::BTreeSet;

    let as_vectors = |ps: Vec<Partition>| {
        let mut v: Vec<Vec<u32>> = ps.iter().map(|p| p.parts().to_vec()).collect();
        v.sort();
        v
    };
    let modulus = Modulus::new(m).map_err(|e| e.to_string())?;
    let (p, q) = build_tables(modulus, n).map_err(|e| e.to_string())?;
    for (ty, p_list, q_list) in rows {
        for (side, table, list) in [(Side::P, &p, p_list), (Side::Q, &q, q_list)] {
            if table.get(ty, n) != list.len() as u64 {
                return Err(format!("{side:?} count of {ty:?} is {}, listed {}", table.get(ty, n), list.len()));
            }
            let got = as_vectors(witnesses(modulus, n, ty, side).map_err(|e| e.to_string())?);
            if got != sorted_lists(list) {
                return Err(format!("{side:?} partitions of {ty:?} differ: {got:?}"));
            }
        }
    }
    let listed: BTreeSet<Vec<u32>> = rows.iter().map(|r| r.0.clone()).collect();
    for (side, table) in [("P", &p), ("Q", &q)] {
        let mixed: BTreeSet<Vec<u32>> = table.types_at(n).into_iter().filter(|t| is_mixed(t)).collect();
        if mixed != listed {
            return Err(format!("{side} side has mixed types {mixed:?}"));
        }
    }
    Ok(())
}

pub mod props {
    //! Randomized invariants shared by the property tests and the acceptance run.

    use std::collections::BTreeMap;

    use proptest::prelude::*;
    use proptest::test_runner::TestCaseError;

    use modpart_core::enumerate::{enumerate_partitions, Constraint};
    use modpart_core::qdiff::count_by_recurrence;
    use modpart_core::{alt_sum_type, length_type, Modulus, Partition, TruncatedSeries};

    pub const MAX_WEIGHT: u32 = 60;
    const SERIES_TRUNC: u32 = 12;

    /// A random partition of weight at most 60.
    pub fn partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1u32..=30, 0..20).prop_map(|raw| {
            let mut budget = MAX_WEIGHT;
            let parts: Vec<u32> = raw
                .into_iter()
                .filter(|&p| {
                    let keep = p <= budget;
                    if keep {
                        budget -= p;
                    }
                    keep
                })
                .collect();
            Partition::from_unsorted(parts).unwrap()
        })
    }

    pub fn modulus() -> impl Strategy<Value = Modulus> {
        (2u32..=7).prop_map(|k| Modulus::new(k).unwrap())
    }

    /// A random two-variable series truncated at q^12 with small coefficients.
    pub fn series() -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(((0u32..3, 0u32..3), 0u32..=14, -5i64..=5), 0..12).prop_map(|terms| {
            TruncatedSeries::from_terms(2, SERIES_TRUNC, terms.into_iter().map(|((a, b), q, c)| (vec![a, b], q, c)))
                .unwrap()
        })
    }

    pub fn conjugation(p: &Partition) -> Result<(), TestCaseError> {
        let c = p.conjugate();
        prop_assert_eq!(c.weight(), p.weight());
        prop_assert_eq!(c.len() as u32, p.largest());
        prop_assert_eq!(&c.conjugate(), p);
        Ok(())
    }

    pub fn padding_and_types(p: &Partition, m: Modulus) -> Result<(), TestCaseError> {
        let k = m.get();
        let padded = p.padded(m);
        prop_assert_eq!(padded.len() % k as usize, 0);
        prop_assert!(padded.len() < p.len() + k as usize);
        prop_assert_eq!(padded.iter().sum::<u32>(), p.weight());

        let sigma = alt_sum_type(p, m);
        let oracle = super::alt_sums(p.parts(), k);
        prop_assert_eq!(sigma.as_slice(), oracle.as_slice());
        // n = Σ_i i·(λ_i − λ_{i+1}), so n ≡ Σ_j j·Σ_j (mod m)
        let weighted: u32 = sigma.as_slice().iter().enumerate().map(|(j, s)| (j as u32 + 1) * s).sum();
        prop_assert_eq!(weighted % k, p.weight() % k);
        prop_assert!(sigma.total() <= p.largest());
        if p.max_multiplicity() < k as usize {
            prop_assert_eq!(sigma.is_zero(), p.is_empty());
        }

        match length_type(p, m) {
            Ok(l) => {
                prop_assert!(p.parts().iter().all(|x| x % k != 0));
                prop_assert_eq!(l.total() as usize, p.len());
                let weighted: u32 = l.as_slice().iter().enumerate().map(|(j, c)| (j as u32 + 1) * c).sum();
                prop_assert_eq!(weighted % k, p.weight() % k);
            }
            Err(_) => prop_assert!(p.parts().iter().any(|x| x % k == 0)),
        }
        Ok(())
    }

    pub fn ring_laws(a: &TruncatedSeries, b: &TruncatedSeries, c: &TruncatedSeries) -> Result<(), TestCaseError> {
        let one = TruncatedSeries::one(2, SERIES_TRUNC);
        let zero = TruncatedSeries::zero(2, SERIES_TRUNC);
        prop_assert_eq!(a.add(b).unwrap(), b.add(a).unwrap());
        prop_assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
        prop_assert_eq!(a.add(b).unwrap().add(c).unwrap(), a.add(&b.add(c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(c).unwrap()).unwrap(), a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap());
        prop_assert!(a.sub(a).unwrap().is_zero());
        prop_assert_eq!(&a.mul(&one).unwrap(), a);
        prop_assert_eq!(&a.add(&zero).unwrap(), a);
        Ok(())
    }

    /// Fixed-length counts at weight n from the recurrence against direct enumeration.
    pub fn recurrence_matches_enumeration(n: u32, length: u32) -> Result<(), TestCaseError> {
        let table = count_by_recurrence(length, n).unwrap();
        let mut direct = BTreeMap::new();
        if n == 0 && length == 0 {
            direct.insert((0u32, 0u32, 0u32), 1u64);
        } else if n > 0 {
            let m3 = Modulus::new(3).unwrap();
            for p in enumerate_partitions(n, Constraint::MaxRepeat(2)).unwrap() {
                if p.len() as u32 == length {
                    let t = alt_sum_type(&p, m3);
                    *direct.entry((t.as_slice()[0], t.as_slice()[1], n)).or_default() += 1;
                }
            }
        }
        let from_table: BTreeMap<_, _> =
            table.length(length).unwrap().iter().filter(|(k, _)| k.2 == n).map(|(&k, &c)| (k, c)).collect();
        prop_assert_eq!(from_table, direct);
        Ok(())
    }
}
