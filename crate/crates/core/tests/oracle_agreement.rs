use proptest::prelude::*;
use quatsym_core::local::hilbert_odd;
use quatsym_core::oracle::{conic_search, isotropy_search, norm_search_quadratic, Field, SearchBound};
use quatsym_core::{classify_quaternion_q, classify_quaternion_qi, fast_path, AlgebraSpec, Status};

fn prime_divisors(mut n: i64) -> Vec<i64> {
    n = n.abs();
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Over `Q(i)` only the primes `p = 1 (mod 4)` keep their completion `Q_p`;
/// every other completion has even degree and splits any rational algebra.
fn qi_split_by_restriction(a: i64, b: i64) -> bool {
    prime_divisors(a * b).into_iter().filter(|p| p % 4 == 1).all(|p| hilbert_odd(a, b, p).unwrap().value() == 1)
}

#[test]
fn qi_verdicts_match_restriction_to_q() {
    for a in -60i64..=60 {
        for b in -60i64..=60 {
            if a == 0 || b == 0 {
                continue;
            }
            let v = classify_quaternion_qi(a, b).unwrap();
            assert_eq!(v.status == Status::Split, qi_split_by_restriction(a, b), "({a},{b})");
            assert_eq!(v.ramified.len() % 2, 0, "({a},{b}) ramifies at an odd number of places");
        }
    }
}

#[test]
fn split_over_q_stays_split_over_qi() {
    for a in -40i64..=40 {
        for b in -40i64..=40 {
            if a == 0 || b == 0 {
                continue;
            }
            if classify_quaternion_q(a, b).unwrap().status == Status::Split {
                assert_eq!(classify_quaternion_qi(a, b).unwrap().status, Status::Split, "({a},{b})");
            }
        }
    }
}

#[test]
fn gaussian_searches_agree_with_qi_verdicts() {
    let bound = SearchBound::new(6).unwrap();
    for a in [-7i64, -3, -2, -1, 2, 3, 5, 6, 7, 10, 13, 15] {
        for b in [3i64, 5, 13, 17, 29] {
            let split = classify_quaternion_qi(a, b).unwrap().status == Status::Split;
            let point = conic_search(a, b, Field::Qi, bound).unwrap();
            if !split {
                assert_eq!(point, None, "conic point for division algebra ({a},{b})");
                assert_eq!(isotropy_search(a, b, Field::Qi, bound).unwrap(), None);
            }
            if point.is_some() {
                assert!(split);
            }
        }
    }
}

#[test]
fn norm_witness_implies_split() {
    // b is a norm from K(sqrt(a)) exactly when (a, b) splits over K
    let bound = SearchBound::new(12).unwrap();
    for a in [2i64, 3, 5, 6, 7, 10, 11, 15] {
        for b in [-3i64, -1, 2, 3, 5, 7, 13, 29] {
            let split = classify_quaternion_q(a, b).unwrap().status == Status::Split;
            if norm_search_quadratic(a, b, Field::Q, bound).unwrap().is_some() {
                assert!(split, "({a},{b})");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn fast_paths_never_contradict(a in -2000i64..=2000, p in 3i64..=3000) {
        prop_assume!(a != 0);
        for spec in [AlgebraSpec::QuaternionQ { a, b: p }, AlgebraSpec::QuaternionQi { a, b: p }, AlgebraSpec::Symbol { q: 3, alpha: a, p }] {
            if let Some(fast) = fast_path(spec) {
                let full = quatsym_core::classify(spec).unwrap();
                prop_assert_eq!(fast.status, full.status, "{}", spec);
            }
        }
    }

    #[test]
    fn conic_points_imply_split_over_q(a in -20i64..=20, b in -20i64..=20) {
        prop_assume!(a != 0 && b != 0);
        if conic_search(a, b, Field::Q, SearchBound::new(25).unwrap()).unwrap().is_some() {
            prop_assert_eq!(classify_quaternion_q(a, b).unwrap().status, Status::Split);
        }
    }
}
