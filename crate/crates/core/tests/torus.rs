use apclab_core::torus::*;
use num_integer::Integer;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x7042_0002;

fn a(p: i64, q1: i64, q2: i64, s1: i64, s2: i64) -> TorusAction {
    TorusAction::new(p, q1, q2, s1, s2)
}

#[test]
fn freeness_examples() {
    assert_eq!(is_free(&a(2, 0, 1, 1, 0)), Ok(true));
    assert_eq!(is_free(&a(2, 0, 1, -1, 1)), Ok(true));
    assert_eq!(is_free(&a(1, 1, 0, 0, 1)), Ok(false));
    assert!(matches!(is_free(&a(2, 0, 1, 2, 4)), Err(TorusError::NonPrimitiveS(_))));
}

#[test]
fn normalization_examples() {
    assert_eq!(normalize_action(&a(2, 1, 0, 0, 1)), a(2, 0, 1, 1, 0));
    assert_eq!(normalize_action(&a(-2, 0, -1, -1, 1)), a(2, 0, 1, -1, 1));
    for c in CANONICAL {
        assert_eq!(normalize_action(&c), c);
    }
}

#[test]
fn enumeration_small_bounds() {
    for bound in [2, 3, 5] {
        let e = enumerate_free(bound);
        let want: Vec<TorusAction> = {
            let mut v = CANONICAL.to_vec();
            v.sort();
            v
        };
        assert_eq!(e.canonical.iter().copied().collect::<Vec<_>>(), want, "bound {}", bound);
        assert!(e.unexpected.is_empty());
        assert!(e.ps_constraint_holds);
        assert!(e.survivors > 2);
    }
}

/// Independent brute force: the three minors, with gcd conditions spelled out.
#[test]
fn survivors_match_brute_force() {
    let bound = 3i64;
    let mut count = 0;
    for p in -bound..=bound {
        if p == 0 {
            continue;
        }
        for q1 in -bound..=bound {
            for q2 in -bound..=bound {
                for s1 in -bound..=bound {
                    for s2 in -bound..=bound {
                        let eff = p.gcd(&q1).gcd(&q2) == 1 && s1.gcd(&s2) == 1;
                        let m1 = (q1 * s2 - q2 * s1).abs();
                        let m2 = ((q1 - p) * s2 - q2 * s1).abs();
                        let m3 = (q1 * s2 - (q2 - p) * s1).abs();
                        if eff && m1 == 1 && m2 == 1 && m3 == 1 {
                            count += 1;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(enumerate_free(bound).survivors, count);
}

fn random_free(r: &mut ChaCha8Rng) -> TorusAction {
    loop {
        let c = a(r.gen_range(-6..=6), r.gen_range(-6..=6), r.gen_range(-6..=6), r.gen_range(-6..=6), r.gen_range(-6..=6));
        if c.p != 0 && c.is_effective() && is_free(&c) == Ok(true) {
            return c;
        }
    }
}

#[test]
fn freeness_invariant_under_normalization() {
    println!("seed = {:#x}", SEED);
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..500 {
        let c = random_free(&mut r);
        let n = normalize_action(&c);
        assert_eq!(is_free(&n), Ok(true), "{} -> {}", c, n);
        assert!(n.p > 0);
        assert!(CANONICAL.contains(&n), "{} -> {}", c, n);
        let mut m0: Vec<i64> = c.freeness_minors().iter().map(|v| v.abs()).collect();
        let mut m1: Vec<i64> = n.freeness_minors().iter().map(|v| v.abs()).collect();
        m0.sort();
        m1.sort();
        assert_eq!(m0, m1);
    }
}

proptest! {
    #[test]
    fn moves_preserve_freeness(p in -5i64..=5, q1 in -5i64..=5, q2 in -5i64..=5, s1 in -5i64..=5, s2 in -5i64..=5, k in -4i64..=4) {
        let c = a(p, q1, q2, s1, s2);
        prop_assume!(s1.gcd(&s2) == 1);
        let free = is_free(&c).unwrap();
        for m in [reparameterize(&c, k), flip_w(&c), negate(&c), swap_slots(&c)] {
            prop_assert_eq!(is_free(&m).unwrap(), free);
        }
    }

    #[test]
    fn normalization_is_idempotent(p in -5i64..=5, q1 in -5i64..=5, q2 in -5i64..=5, s1 in -5i64..=5, s2 in -5i64..=5) {
        let c = a(p, q1, q2, s1, s2);
        prop_assume!(p != 0 && s1.gcd(&s2) == 1);
        let n = normalize_action(&c);
        prop_assert_eq!(normalize_action(&n), n);
    }
}
