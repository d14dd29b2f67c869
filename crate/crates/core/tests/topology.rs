use apclab_core::eschenburg::Triple;
use apclab_core::topology::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x7090_1093;

/// `ell` from the quotient form, with the derivative limit at `q1 = q2`.
fn ell_oracle(n: u32, p: i128, q1: i128, q2: i128) -> i128 {
    let d = |m: u32| -> i128 {
        if q1 == q2 {
            m as i128 * q1.pow(m - 1)
        } else {
            (q1.pow(m) - q2.pow(m)) / (q1 - q2)
        }
    };
    p * d(n) - d(n + 1)
}

fn trial(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

#[test]
fn ell_examples() {
    for n in 2..=10u32 {
        for p in 0..=10i64 {
            let l = ell(n, &Triple::new(p, 1, 1));
            assert_eq!(l, BigInt::from(p * n as i64 - (n as i64 + 1)), "n = {}, p = {}", n, p);
        }
        assert_eq!(ell(n, &Triple::new(0, 1, 1)), BigInt::from(-(n as i64 + 1)));
    }
    assert_eq!(ell(2, &Triple::new(3, 2, 1)), BigInt::from(2));
}

#[test]
fn ell_matches_quotient_form() {
    println!("seed = {:#x}", SEED);
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..200 {
        let n = r.gen_range(2..=9u32);
        let (p, q1, q2) = (r.gen_range(-30..=30i64), r.gen_range(-30..=30i64), r.gen_range(-30..=30i64));
        let want = ell_oracle(n, p as i128, q1 as i128, q2 as i128);
        assert_eq!(ell(n, &Triple::new(p, q1, q2)), BigInt::from(want));
    }
}

#[test]
fn divided_power_consistency() {
    let mut r = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let mut done = 0;
    while done < 100 {
        let (a, b) = (r.gen_range(-60..=60i64), r.gen_range(-60..=60i64));
        if a == b {
            continue;
        }
        let m = r.gen_range(1..=12u32);
        let (ab, bb) = (BigInt::from(a), BigInt::from(b));
        let num = num_traits::pow(ab.clone(), m as usize) - num_traits::pow(bb.clone(), m as usize);
        let (q, rem) = num.div_rem(&(&ab - &bb));
        assert!(rem.is_zero());
        assert_eq!(homogeneous_sum(&ab, &bb, m), q);
        done += 1;
    }
}

#[test]
fn invariants_fields() {
    let inv = invariants(7, &Triple::new(13, 1, 1)).unwrap();
    assert_eq!((inv.dim, inv.ell.clone(), inv.h2n_order.clone()), (27, BigInt::from(83), Some(BigInt::from(83))));
    // p n = n + 1 has no solution for n >= 2, but (p, q, q) with p = (n+1) q / n does.
    let inv = invariants(2, &Triple::new(3, 2, 2)).unwrap();
    assert_eq!(inv.ell, BigInt::zero());
    assert_eq!(inv.h2n_order, None);
    assert_eq!(invariants(1, &Triple::new(3, 1, 1)), Err(TopologyError::DimensionTooSmall(1)));
}

#[test]
fn parity_law() {
    for n in [6u32, 8, 10] {
        for r1 in -50i64..=50 {
            for r2 in -50i64..=50 {
                if r1.gcd(&r2) != 1 {
                    continue;
                }
                let l = ell(n, &Triple::new(0, r1, r2));
                assert!(l.is_odd(), "n = {}, ({}, {})", n, r1, r2);
            }
        }
    }
}

#[test]
fn family_parity() {
    for n in [6u32, 8, 10] {
        for s in 1..=10i64 {
            let t = Triple::new(2 * s + 1, 1, 2 * s - 1);
            assert!(apclab_core::eschenburg::is_admissible(&t));
            let l = ell(n, &t);
            let a = BigInt::from(2 * s);
            let d = BigInt::from(2 * s - 1);
            let closed: BigInt = BigInt::from(2 * s + 1) * (num_traits::pow(a.clone(), n as usize) - 1) / &d
                - (num_traits::pow(a, n as usize + 1) - 1) / &d;
            // The closed form is even, but it is ell of the pair (2s, 1), not of this triple.
            assert!(closed.is_even());
            assert_eq!(closed, ell(n, &Triple::new(2 * s + 1, 2 * s, 1)));
            assert!(l.is_odd(), "n = {}, s = {}", n, s);
        }
    }
}

#[test]
fn even_n_never_gives_even_ell_for_admissible_triples() {
    for n in [2u32, 4, 6, 8] {
        for t in apclab_core::eschenburg::enumerate_admissible(9) {
            assert!(ell(n, &t).is_odd(), "n = {}, {}", n, t);
            let c = inhomogeneity_certificate(n, &t, 2).unwrap();
            assert!(!matches!(c, InhomogeneityCertificate::Parity { .. }));
        }
    }
}

#[test]
fn mod4_law() {
    for n in [7u32, 9] {
        for r1 in -40i64..=40 {
            for r2 in -40i64..=40 {
                if r1.gcd(&r2) != 1 {
                    continue;
                }
                let l = ell(n, &Triple::new(0, r1, r2)).abs();
                if (&l % 4u32) == BigInt::from(3) {
                    assert!(!is_prime(&l).0, "n = {}, ({}, {}) gives prime {}", n, r1, r2, l);
                }
            }
        }
    }
}

#[test]
fn primality_against_trial_division() {
    for v in 0u64..5000 {
        assert_eq!(is_prime(&BigInt::from(v)).0, trial(v), "{}", v);
    }
    let mut r = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    for _ in 0..300 {
        let v = r.gen_range((1u64 << 32)..(1u64 << 40));
        let (prime, method) = is_prime(&BigInt::from(v));
        assert_eq!(prime, trial(v), "{}", v);
        assert!(method.is_proof());
    }
    // Strong pseudoprime to bases 2, 3, 5, 7.
    assert!(!is_prime(&BigInt::from(3215031751u64)).0);
    // Strong pseudoprime to bases 2, 7, 61.
    assert!(!is_prime(&BigInt::from(4_759_123_141u64)).0);
    let m61 = (BigInt::from(1) << 61) - 1;
    assert_eq!(is_prime(&m61), (true, PrimalityMethod::DeterministicMillerRabin));
    let m127 = (BigInt::from(1) << 127) - 1;
    assert_eq!(is_prime(&m127), (true, PrimalityMethod::ProbableMillerRabin));
    assert!(!is_prime(&(&m127 * &m61)).0);
    assert!(is_prime(&BigInt::from(-83)).0);
}

#[test]
fn homogeneous_match_examples() {
    // Brute force with the oracle.
    let first = |n: u32, target: i128, bound: i64| -> Option<(i64, i64)> {
        for r1 in -bound..=bound {
            for r2 in 0..=bound {
                if (r2 > 0 || r1 > 0) && r1.gcd(&r2) == 1 && ell_oracle(n, 0, r1 as i128, r2 as i128).abs() == target {
                    return Some((r1, r2));
                }
            }
        }
        None
    };
    for target in [0i128, 1, 3, 7, 43, 127, 1093] {
        assert_eq!(homogeneous_match(6, &BigInt::from(target), 10), first(6, target, 10), "target {}", target);
    }
    for target in [2i64, 4, 64, 1000] {
        assert_eq!(homogeneous_match(8, &BigInt::from(target), 20), None);
    }
}

#[test]
fn certificates() {
    // ell(6, (3, 1, 1)) = 11 is odd, so no parity obstruction applies.
    let c = inhomogeneity_certificate(6, &Triple::new(3, 1, 1), 10).unwrap();
    assert_eq!(c.kind(), "bounded-search-only");
    assert!(!c.is_conclusive());

    let c = inhomogeneity_certificate(7, &Triple::new(13, 1, 1), 10).unwrap();
    assert_eq!(
        c,
        InhomogeneityCertificate::PrimeMod4 { n: 7, prime: BigInt::from(83), method: PrimalityMethod::TrialDivision }
    );
    assert!(c.is_conclusive());

    let c = inhomogeneity_certificate(7, &Triple::new(5, 1, 1), 10).unwrap();
    match &c {
        InhomogeneityCertificate::BoundedSearchOnly { ell, bound, .. } => {
            assert_eq!(ell.abs(), BigInt::from(27));
            assert_eq!(*bound, 10);
        }
        other => panic!("{:?}", other),
    }
    assert!(!c.is_conclusive());

    assert_eq!(inhomogeneity_certificate(1, &Triple::new(3, 1, 1), 5), Err(TopologyError::DimensionTooSmall(1)));
    assert!(matches!(inhomogeneity_certificate(6, &Triple::new(1, 0, 1), 5), Err(TopologyError::Inadmissible(_))));
}

#[test]
fn prime_search_examples() {
    let h = prime_search(7, 3);
    assert_eq!((h[0].k, h[0].p, h[0].prime), (3, 13, 83));
    let h9 = prime_search(9, 1);
    assert_eq!((h9[0].k, h9[0].p, h9[0].prime), (2, 9, 71));
    for hit in prime_search(11, 20) {
        assert_eq!(hit.p % 4, 1);
        assert!(trial(hit.prime));
        assert_eq!(hit.prime, 4 * hit.k * 11 - 1);
        let l = ell(11, &Triple::new(hit.p as i64, 1, 1));
        assert_eq!(l, BigInt::from(hit.prime));
    }
}
