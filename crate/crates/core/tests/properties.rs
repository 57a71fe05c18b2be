mod common;

use famzv::identities::{compute_p_sigma, main_lhs_at, reversal_sign, MainMode};
use famzv::indices::{enumerate_shuffles, SignedIndex};
use famzv::report::{ReportBuilder, ReportRow, VerificationReport};
use famzv::series::li_series;
use famzv::zeta::{famzv, ZetaEngine, ZetaTable};
use famzv::{build_main_lhs, enumerate_s};
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 8] = [3, 5, 7, 11, 13, 17, 19, 23];

fn arb_index(max_depth: usize, max_abs: i32) -> impl Strategy<Value = SignedIndex> {
    prop::collection::vec((1..=max_abs, any::<bool>()), 1..=max_depth).prop_map(|v| {
        SignedIndex::new(
            v.into_iter()
                .map(|(a, neg)| if neg { -a } else { a })
                .collect(),
        )
        .unwrap()
    })
}

fn arb_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(SMALL_PRIMES.to_vec())
}

proptest! {
    #[test]
    fn recurrence_matches_reference(a in arb_index(3, 3), p in arb_prime()) {
        prop_assert_eq!(famzv(&a, p).unwrap().value(), common::zeta(a.entries(), p));
    }

    #[test]
    fn reversal_holds_at_every_odd_prime(a in arb_index(5, 4), p in arb_prime()) {
        let fp = famzv::Fp::new(p).unwrap();
        let want = fp.signed(famzv(&a, p).unwrap().value(), reversal_sign(&a));
        prop_assert_eq!(famzv(&a.reversed(), p).unwrap().value(), want);
    }

    #[test]
    fn coefficient_sum_is_the_zeta_value(a in arb_index(6, 4), p in arb_prime()) {
        prop_assert_eq!(li_series(&a, p).unwrap().lp(), famzv(&a, p).unwrap().value());
    }

    #[test]
    fn deep_indices_vanish(extra in 0usize..3, p in prop::sample::select(vec![3u64, 5, 7])) {
        let a = SignedIndex::new(vec![1; p as usize + extra]).unwrap();
        prop_assert_eq!(famzv(&a, p).unwrap().value(), 0);
    }

    #[test]
    fn sum_formula_vanishes_at_random_points(
        n in 0u32..3,
        m in 0u32..3,
        p in prop::sample::select(vec![11u64, 13, 17, 19, 23, 29]),
        point in prop::array::uniform4(0u64..1000),
    ) {
        let engine = ZetaEngine::new(p).unwrap();
        let mut needed = Vec::new();
        for r1 in 0..=n {
            for k1 in 0..=m {
                for a in enumerate_s(r1, k1, true) {
                    for b in enumerate_s(n - r1, m - k1, true) {
                        needed.push(a.concat(&b));
                    }
                }
            }
        }
        let table = ZetaTable::compute(&engine, &needed, None);
        prop_assert_eq!(main_lhs_at(n, m, MainMode::Alternating, &engine, &table, point), 0);
    }

    #[test]
    fn bihomogeneous_and_sparse_evaluation_agree(
        n in 0u32..3,
        m in 0u32..3,
        point in prop::array::uniform4(0u64..7),
    ) {
        // Below the threshold the polynomial need not vanish, which makes
        // the comparison informative.
        let poly = build_main_lhs(n, m, 3, MainMode::Alternating).unwrap();
        let x: Vec<u64> = point.iter().map(|v| v % 3).collect();
        prop_assert_eq!(poly.eval([x[0], x[1], x[2], x[3]]), poly.to_sparse().eval(&x));
    }

    #[test]
    fn shuffle_tables_partition_correctly(s in 1usize..4, t in 1usize..4) {
        let n = s + t;
        for sigma in enumerate_shuffles(s, t).unwrap() {
            let table = compute_p_sigma(&sigma);
            prop_assert!(table.incidence.iter().all(|set| !set.is_empty()));
            prop_assert_eq!(&table.incidence[n - 1], &vec![s, n]);
            // every original step covers a nonempty run of merged steps
            for j in 1..=n {
                let covered: Vec<usize> = (1..=n).filter(|&i| table.contains(i, j)).collect();
                prop_assert!(!covered.is_empty());
                prop_assert!(covered.windows(2).all(|w| w[1] == w[0] + 1));
            }
        }
    }

    #[test]
    fn report_json_round_trips(
        rows in prop::collection::vec((arb_prime(), any::<bool>(), any::<bool>()), 1..10),
    ) {
        let rows: Vec<ReportRow> = rows.into_iter().map(|(p, j, h)| ReportRow::prime(p, j, h)).collect();
        let report = ReportBuilder::new("prop").param("k", 1u64).finish(rows);
        let text = report.to_json();
        let back = VerificationReport::from_json(&text).unwrap();
        prop_assert_eq!(back.passed(), report.passed());
        prop_assert_eq!(&back.failures, &report.failures);
        prop_assert_eq!(back.to_json(), text);
    }
}
