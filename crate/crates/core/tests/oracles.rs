//! Library results against independent reference computations.

mod common;

use std::collections::BTreeMap;

use modpart_core::enumerate::{count_partitions, enumerate_partitions, AgInterpretation, Constraint};
use modpart_core::classify::UnitCase;
use modpart_core::gf::{
    auto_max_n, case_a_generating_function, factorized_q_generator, pure_type_generator_auto, rhs_companion,
    sigma_one_series, sigma_two_assembly, Companion,
};
use modpart_core::verify::{count_row, Side};
use modpart_core::{alt_sum_type, length_type, Modulus, Partition, TruncatedSeries};

fn m(k: u32) -> Modulus {
    Modulus::new(k).unwrap()
}

fn listed(n: u32, c: Constraint) -> Vec<Vec<u32>> {
    enumerate_partitions(n, c).unwrap().map(|p| p.parts().to_vec()).collect()
}

#[test]
fn enumerator_matches_brute_force() {
    for n in 0..=20 {
        let all = common::brute_partitions(n);
        let filtered = |keep: &dyn Fn(&Vec<u32>) -> bool| all.iter().filter(|p| keep(p)).cloned().collect::<Vec<_>>();
        assert_eq!(listed(n, Constraint::All), all, "n={n}");
        for r in 1..=3 {
            assert_eq!(listed(n, Constraint::MaxRepeat(r)), filtered(&|p| common::max_repeat(p) <= r as usize));
        }
        for k in 2..=5 {
            assert_eq!(listed(n, Constraint::NoPartsDivisibleBy(k)), filtered(&|p| p.iter().all(|x| x % k != 0)));
        }
        let gap = |p: &Vec<u32>| p.windows(2).all(|w| w[0] - w[1] >= 2);
        assert_eq!(listed(n, Constraint::GapAtLeastTwo), filtered(&gap));
        assert_eq!(listed(n, Constraint::GapAtLeastTwoNoOnes), filtered(&|p| gap(p) && !p.contains(&1)));
    }
}

#[test]
fn partition_numbers_follow_pentagonal_recurrence() {
    let p = common::pentagonal_counts(50);
    for n in 0..=50u32 {
        assert_eq!(count_partitions(n, Constraint::All).unwrap() as i64, p[n as usize], "p({n})");
    }
}

#[test]
fn type_vectors_match_definitions() {
    for k in 2..=5 {
        for n in 0..=16 {
            for parts in common::brute_partitions(n) {
                let p = Partition::new(parts.clone()).unwrap();
                assert_eq!(alt_sum_type(&p, m(k)).into_vec(), common::alt_sums(&parts, k), "{p} m={k}");
                if parts.iter().all(|x| x % k != 0) {
                    assert_eq!(length_type(&p, m(k)).unwrap().into_vec(), common::residue_counts(&parts, k));
                } else {
                    assert!(length_type(&p, m(k)).is_err(), "{p} m={k}");
                }
            }
        }
    }
}

#[test]
fn modulus_two_distinct_parts_by_alternating_sum() {
    // distinct parts with alternating sum k against odd parts with k parts
    let odd = common::odd_parts_by_count(40);
    for n in 1..=40u32 {
        let p = count_row(m(2), n, Side::P).unwrap();
        let q = count_row(m(2), n, Side::Q).unwrap();
        for k in 0..=n {
            let want = odd[n as usize][k as usize];
            assert_eq!(p.get(&vec![k]).copied().unwrap_or(0), want, "P n={n} k={k}");
            assert_eq!(q.get(&vec![k]).copied().unwrap_or(0), want, "Q n={n} k={k}");
        }
    }
}

#[test]
fn count_rows_match_brute_force() {
    for k in 2..=5 {
        for n in 1..=18 {
            let p: BTreeMap<_, _> = count_row(m(k), n, Side::P).unwrap().into_iter().collect();
            let q: BTreeMap<_, _> = count_row(m(k), n, Side::Q).unwrap().into_iter().collect();
            assert_eq!(p, common::p_side_row(n, k), "P m={k} n={n}");
            assert_eq!(q, common::q_side_row(n, k), "Q m={k} n={n}");
        }
    }
}

#[test]
fn gap_condition_counts_match_product_side() {
    // parts avoiding 0 and ±i modulo 2d + 1
    for d in 2..=3u32 {
        for i in 1..=d {
            let modulus = 2 * d + 1;
            for n in 1..=26 {
                let c = Constraint::AndrewsGordon { d, i, interpretation: AgInterpretation::Standard };
                let product = common::brute_partitions(n)
                    .iter()
                    .filter(|p| p.iter().all(|x| ![0, i, modulus - i].contains(&(x % modulus))))
                    .count() as u64;
                assert_eq!(count_partitions(n, c).unwrap(), product, "d={d} i={i} n={n}");
            }
        }
    }
}

/// Brute-force series over one side, keeping the types picked by `select`,
/// with z marking the value `select` returns.
fn brute_series(
    k: u32,
    trunc: u32,
    q_side: bool,
    select: impl Fn(&[u32]) -> Option<u32>,
) -> TruncatedSeries {
    let mut terms = Vec::new();
    for n in 0..=trunc {
        let row = if n == 0 {
            BTreeMap::from([(vec![0; k as usize - 1], 1)])
        } else if q_side {
            common::q_side_row(n, k)
        } else {
            common::p_side_row(n, k)
        };
        for (ty, c) in row {
            if let Some(e) = select(&ty) {
                terms.push((vec![e], n, c as i64));
            }
        }
    }
    TruncatedSeries::from_terms(1, trunc, terms).unwrap()
}

fn only_first(ty: &[u32], rest: &[u32]) -> Option<u32> {
    (ty[1..] == *rest).then_some(ty[0])
}

#[test]
fn pure_generator_counts_first_coordinate_types() {
    for k in 3..=5 {
        let zeros = vec![0; k as usize - 2];
        let want = brute_series(k, 24, false, |t| only_first(t, &zeros));
        assert_eq!(pure_type_generator_auto(m(k), 24).unwrap(), want, "m={k}");
    }
}

#[test]
fn sigma_one_family_counts() {
    for k in 3..=5 {
        let mut rest = vec![0; k as usize - 2];
        rest[0] = 1;
        let want = brute_series(k, 24, false, |t| only_first(t, &rest));
        assert_eq!(sigma_one_series(m(k), 24).unwrap(), want, "m={k}");
    }
}

#[test]
fn sigma_two_family_counts() {
    let want = brute_series(3, 30, false, |t| only_first(t, &[2]));
    assert_eq!(sigma_two_assembly(30, auto_max_n(30)).unwrap().total().unwrap(), want);
}

#[test]
fn case_a_part_counts_case_a_partitions() {
    let mut want = BTreeMap::<(u32, u32), i64>::new();
    for ((case, ..), coeffs) in common::lemma_class_counts(30) {
        if case == UnitCase::CaseA {
            for (k, c) in coeffs {
                *want.entry(k).or_default() += c;
            }
        }
    }
    let got = case_a_generating_function(30, auto_max_n(30)).unwrap();
    let got: BTreeMap<(u32, u32), i64> = got.terms().map(|(k, c)| ((k.z[0], k.q), c)).collect();
    assert_eq!(got, want);
}

#[test]
fn companion_series_are_length_type_series() {
    let eq31 = brute_series(3, 24, true, |t| only_first(t, &[2]));
    assert_eq!(rhs_companion(m(3), Companion::Eq31, 24).unwrap(), eq31);
    let eq32 = brute_series(3, 24, true, |t| (t[0] == 2).then_some(t[1]));
    assert_eq!(rhs_companion(m(3), Companion::Eq32, 24).unwrap(), eq32);
    for k in 3..=5u32 {
        for i in 1..k {
            for j in (1..k).filter(|&j| j != i) {
                let want = brute_series(k, 20, true, |t| {
                    let mut rest = t.to_vec();
                    let l = rest[i as usize - 1];
                    rest[i as usize - 1] = 0;
                    rest[j as usize - 1] = rest[j as usize - 1].checked_sub(1)?;
                    rest.iter().all(|&x| x == 0).then_some(l)
                });
                let got = rhs_companion(m(k), Companion::Eq33 { i, j }, 20).unwrap();
                assert_eq!(got, want, "m={k} i={i} j={j}");
            }
        }
    }
}

#[test]
fn factorized_generator_is_length_type_table() {
    for k in 2..=6u32 {
        let f = factorized_q_generator(m(k), 30).unwrap();
        for n in 1..=30 {
            for (ty, c) in common::q_side_row(n, k) {
                assert_eq!(f.coeff(&ty, n).unwrap(), c as i64, "m={k} n={n} {ty:?}");
            }
            let row_total: u64 = common::q_side_row(n, k).values().sum();
            let series_total: i64 = f.terms().filter(|(mono, _)| mono.q == n).map(|(_, c)| c).sum();
            assert_eq!(series_total, row_total as i64);
        }
    }
}
