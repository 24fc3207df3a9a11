mod common;

use balsym::bisect::{
    bisection_from_solution, count_trivial, find_all_solutions, signed_sum, SignVector,
};
use balsym::exactnum::pow2;
use balsym::symfun::is_balanced_elem;
use common::exhaustive_bisections;
use num_bigint::BigUint;
use num_traits::Zero;

#[test]
fn split_search_matches_exhaustive_counts() {
    for n in 1..=20u64 {
        let (total, trivial) = exhaustive_bisections(n);
        let r = find_all_solutions(n, false).unwrap();
        assert_eq!(r.total, BigUint::from(total), "n={n}");
        assert_eq!(r.trivial, BigUint::from(trivial), "n={n}");
    }
}

#[test]
fn trivial_counts_match_closed_form() {
    for n in 1..=28u64 {
        assert_eq!(find_all_solutions(n, false).unwrap().trivial, count_trivial(n));
    }
}

#[test]
fn witnesses_are_genuine_bisections() {
    for n in [8u64, 13, 14, 20] {
        let r = find_all_solutions(n, true).unwrap();
        let ws = r.witnesses.unwrap();
        assert_eq!(BigUint::from(ws.len()), r.nontrivial);
        for w in &ws {
            assert!(signed_sum(w).is_zero());
            let b = bisection_from_solution(w).unwrap();
            assert_eq!(b.half, pow2(n) >> 1u32);
            assert_eq!(b.plus.len() + b.minus.len(), n as usize + 1);
        }
        assert!(ws.windows(2).all(|p| p[0] < p[1]));
    }
}

#[test]
fn balanced_elementary_functions_give_solutions() {
    for n in 1..=40u64 {
        for d in 1..=n {
            if is_balanced_elem(d, n).unwrap() {
                assert!(signed_sum(&SignVector::from_elem(d, n)).is_zero(), "d={d} n={n}");
            }
        }
    }
}

#[test]
fn counts_do_not_depend_on_worker_count() {
    let run = |k| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .unwrap()
            .install(|| find_all_solutions(24, true).unwrap())
    };
    assert_eq!(run(1), run(4));
}
