use std::collections::BTreeSet;

use dedekind_core::contfrac::convergents_periodic;
use dedekind_core::dedekind::{normalized_sum_fast, s_naive};
use dedekind_core::family::verify_member;
use dedekind_core::search::{search_value_with, SearchOptions};
use dedekind_core::{
    normalized_sum, CoprimePair, FamilyPlan, Integer, Method, Period, PeriodicSurd, Rational,
};
use num_integer::Integer as _;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into()).unwrap()
}

fn coprime_pairs(max_b: i64) -> impl Iterator<Item = (i64, i64)> {
    (1..=max_b).flat_map(|b| (0..b).filter(move |&a| a.gcd(&b) == 1).map(move |a| (a, b)))
}

#[test]
fn integrality_of_scaled_sum() {
    for (a, b) in coprime_pairs(200) {
        let s = normalized_sum_fast(&CoprimePair::new(a, b).unwrap()) * Rational::from(b);
        assert!(s.is_integer(), "({a}, {b})");
        assert!(s.numer().is_even(), "({a}, {b}): {s}");
    }
}

#[test]
fn twelve_s_is_normalized() {
    for (a, b) in coprime_pairs(40) {
        let p = CoprimePair::new(a, b).unwrap();
        assert_eq!(
            Rational::from(12) * s_naive(&p),
            normalized_sum(&p, Method::Fast)
        );
    }
}

#[test]
fn closed_form_matches_sum_on_small_periods() {
    for len in [1usize, 3, 5] {
        for code in 0..4u64.pow(len as u32) {
            let terms: Vec<u64> = (0..len)
                .map(|i| code / 4u64.pow(i as u32) % 4 + 1)
                .collect();
            let period = Period::from_u64s(&terms).unwrap();
            let surd = PeriodicSurd::from_period(&period).unwrap();
            let row = convergents_periodic(&period, len as u64 - 1)
                .entries
                .pop()
                .unwrap();
            assert_eq!(
                surd.closed_form_value().unwrap(),
                normalized_sum_fast(&row.pair()),
                "{terms:?}"
            );
        }
    }
}

#[test]
fn random_families_hold_their_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut done = 0;
    while done < 200 {
        let b: i64 = rng.gen_range(1..=10_000);
        let a: i64 = rng.gen_range(0..b);
        if a.gcd(&b) != 1 {
            continue;
        }
        let c: i64 = rng.gen_range(1..=3);
        let plan = FamilyPlan::new(a, b, c).unwrap();
        let members = plan.family_members(3);
        assert_eq!(members[0].pair, *plan.source());
        for w in members.windows(2) {
            assert!(w[1].pair.b() > w[0].pair.b());
        }
        for m in &members {
            assert!(m.pair.a().gcd(m.pair.b()) == Integer::from(1));
            assert!(verify_member(m, plan.source()), "({a}, {b}) c={c}: {:?}", m);
            if let Some(k) = m.k {
                let len = plan.period_len().unwrap();
                assert_eq!(k % (2 * len), len - 1);
            }
        }
        if let Some(period) = plan.period() {
            let surd = PeriodicSurd::from_period(period).unwrap();
            assert_eq!(&surd.closed_form_value().unwrap(), plan.value());
        }
        done += 1;
    }
}

#[test]
fn search_agrees_with_naive_sweep() {
    let bound = 200i64;
    let mut table: Vec<((i64, i64), Rational)> = vec![];
    for (a, b) in coprime_pairs(bound - 1).filter(|&(a, _)| a > 0) {
        table.push((
            (a, b),
            normalized_sum(&CoprimePair::new(a, b).unwrap(), Method::Naive),
        ));
    }
    let observed: Vec<Rational> = table
        .iter()
        .map(|(_, v)| v.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut targets: Vec<Rational> = (0..18)
        .map(|_| observed[rng.gen_range(0..observed.len())].clone())
        .collect();
    targets.push(Rational::zero());
    targets.push(rat(1, 3));
    for target in targets {
        let expected: Vec<(i64, i64)> = table
            .iter()
            .filter(|(_, v)| *v == target)
            .map(|(p, _)| *p)
            .collect();
        for prune in [true, false] {
            let got = search_value_with(
                &target,
                bound as u64,
                &SearchOptions {
                    prune,
                    jobs: Some(3),
                },
            )
            .unwrap();
            let got: Vec<(i64, i64)> = got
                .hits
                .iter()
                .map(|p| (p.a().try_into().unwrap(), p.b().try_into().unwrap()))
                .collect();
            assert_eq!(got, expected, "target {target}, prune {prune}");
        }
    }
}

#[test]
fn search_is_independent_of_worker_count() {
    let target = rat(18, 7);
    let base = search_value_with(
        &target,
        2000,
        &SearchOptions {
            prune: true,
            jobs: Some(1),
        },
    )
    .unwrap();
    for jobs in [2, 5, 8] {
        let other = search_value_with(
            &target,
            2000,
            &SearchOptions {
                prune: true,
                jobs: Some(jobs),
            },
        )
        .unwrap();
        assert_eq!(other, base);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pruning_preserves_hits(num in -30i64..30, den in 1i64..30, bound in 2u64..400) {
        let target = rat(num, den);
        let pruned = search_value_with(&target, bound, &SearchOptions { prune: true, jobs: Some(2) }).unwrap();
        let exact = search_value_with(&target, bound, &SearchOptions { prune: false, jobs: Some(2) }).unwrap();
        prop_assert_eq!(pruned.hits, exact.hits);
        prop_assert!(pruned.pairs_scanned <= exact.pairs_scanned);
    }

    #[test]
    fn reciprocity_on_large_pairs(a in 1u64..u64::MAX / 2, b in 1u64..u64::MAX / 2) {
        prop_assume!(a.gcd(&b) == 1);
        let (ai, bi) = (Integer::from(a), Integer::from(b));
        let lhs = normalized_sum_fast(&CoprimePair::new(ai.clone(), bi.clone()).unwrap())
            + normalized_sum_fast(&CoprimePair::new(bi.clone(), ai.clone()).unwrap());
        let ab = &ai * &bi;
        let rhs = Rational::from(-3)
            + Rational::new(&ai * &ai + &bi * &bi + 1u32, ab).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn convergent_determinant(terms in proptest::collection::vec(1u64..50, 1..8), depth in 1u64..80) {
        let period = Period::from_u64s(&terms).unwrap();
        let table = convergents_periodic(&period, depth);
        for w in table.entries.windows(2) {
            let det = &w[1].p * &w[0].q - &w[0].p * &w[1].q;
            let expected = if w[1].k % 2 == 1 { 1 } else { -1 };
            prop_assert_eq!(det, Integer::from(expected));
            prop_assert!(w[1].p.gcd(&w[1].q) == Integer::from(1));
        }
    }

    #[test]
    fn doubling_a_period_keeps_the_quadratic(terms in proptest::collection::vec(1u64..20, 1..7)) {
        let period = Period::from_u64s(&terms).unwrap();
        let once = PeriodicSurd::from_period(&period).unwrap();
        let twice = PeriodicSurd::from_period(&period.doubled()).unwrap();
        prop_assert_eq!(once.coefficients(), twice.coefficients());
    }
}
