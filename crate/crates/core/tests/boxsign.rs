use apclab_core::boxsign::*;
use apclab_core::eschenburg::{build_f, is_admissible, Triple, TABULATED};
use apclab_core::exactpoly::rational::{int, rat};
use apclab_core::exactpoly::{BiPoly, RatBox};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0xb0c5_1690;

fn f_of(p: i64, q1: i64, q2: i64) -> BiPoly {
    build_f(&Triple::new(p, q1, q2))
}

#[test]
fn paper_examples() {
    let b = Budget::default();
    let c = decide_nonpositive(&f_of(1, -1, 1), &RatBox::unit(), b);
    assert_eq!(c.verdict, SignVerdict::Nonpositive);
    assert!(c.is_conclusive());
    let c = decide_nonpositive(&f_of(2, 0, 1), &RatBox::unit(), b);
    assert_eq!(c.verdict, SignVerdict::Nonpositive);
    let f = f_of(2, -1, 1);
    let c = decide_nonpositive(&f, &RatBox::unit(), b);
    assert_eq!(c.verdict, SignVerdict::Positive);
    let (x, y) = c.witness.clone().unwrap();
    assert!(f.eval(&x, &y) > int(0));
    let c = decide_nonpositive(&BiPoly::zero(), &RatBox::unit(), b);
    assert_eq!(c.verdict, SignVerdict::Nonpositive);
    assert!(c.witness.is_none());
}

#[test]
fn float_estimates() {
    let bx = RatBox::unit();
    assert!(float_max_estimate(&f_of(1, -1, 1), &bx, 16) <= 0.0);
    assert_eq!(float_max_estimate(&BiPoly::constant(int(5)), &bx, 4), 5.0);
    assert!(float_max_estimate(&f_of(2, -1, 1), &bx, 32) > 0.0);
}

#[test]
fn zero_is_never_a_witness() {
    // -x^2 y^2 touches zero along two edges.
    let f = BiPoly::from_int_terms(&[(2, 2, -1)]);
    let c = decide_nonpositive(&f, &RatBox::unit(), Budget::default());
    assert_eq!(c.verdict, SignVerdict::Nonpositive);
}

#[test]
fn nonpositive_verdicts_survive_dense_sampling() {
    println!("seed = {:#x}", SEED);
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    let tab: Vec<(i64, i64, i64)> = TABULATED.iter().map(|e| e.0).collect();
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 50 {
        attempts += 1;
        assert!(attempts < 5000, "not enough nonpositive triples sampled");
        let (p, q1, q2) = (r.gen_range(-8..=8), r.gen_range(-8..=8), r.gen_range(-8..=8));
        let t = Triple::new(p, q1, q2);
        if !is_admissible(&t) || tab.contains(&(p, q1, q2)) {
            continue;
        }
        let f = build_f(&t);
        let c = decide_nonpositive(&f, &RatBox::unit(), Budget::default());
        assert!(c.is_conclusive(), "{}", t);
        if c.verdict != SignVerdict::Nonpositive {
            let (x, y) = c.witness.unwrap();
            assert!(f.eval(&x, &y) > int(0), "{}", t);
            continue;
        }
        for i in 0..=63 {
            let col = f.subs_x(&rat(i, 63));
            for j in 0..=63 {
                assert!(col.eval(&rat(j, 63)) <= int(0), "{} positive at ({}/63, {}/63)", t, i, j);
            }
        }
        checked += 1;
    }
}

#[test]
fn monotone_under_sub_boxes() {
    let b = Budget::default();
    for (p, q1, q2) in [(1, -1, 1), (2, -5, 3), (3, 1, 1), (2, 0, 1), (5, 2, 3)] {
        let f = f_of(p, q1, q2);
        let top = decide_nonpositive(&f, &RatBox::unit(), b);
        assert_eq!(top.verdict, SignVerdict::Nonpositive, "({}, {}, {})", p, q1, q2);
        let (l, rr) = RatBox::unit().split_x();
        for half in [l, rr] {
            let (lo, hi) = half.split_y();
            for q in [half.clone(), lo, hi] {
                let c = decide_nonpositive(&f, &q, b);
                assert_eq!(c.verdict, SignVerdict::Nonpositive, "({}, {}, {}) on {:?}", p, q1, q2, q);
            }
        }
        let inner = RatBox::new(rat(1, 7), rat(5, 9), rat(2, 11), rat(3, 4)).unwrap();
        assert_eq!(decide_nonpositive(&f, &inner, b).verdict, SignVerdict::Nonpositive);
    }
}

#[test]
fn deterministic_certificates() {
    for (p, q1, q2) in [(2, -1, 1), (2, -5, 3), (3, 1, 3)] {
        let f = f_of(p, q1, q2);
        let a = decide_nonpositive(&f, &RatBox::unit(), Budget::default());
        let b = decide_nonpositive(&f, &RatBox::unit(), Budget::default());
        assert_eq!(a, b);
        assert_eq!(format!("{:?}", a), format!("{:?}", b));
    }
}

#[test]
fn exhausted_budget_is_flagged() {
    // A shallow budget without elimination cannot settle a polynomial that
    // touches zero in the interior.
    let f = BiPoly::from_int_terms(&[(2, 0, -4), (1, 0, 4), (0, 0, -1)]); // -(2x - 1)^2
    let b = Budget { max_depth: 2, max_nodes: 100, tier3: false };
    let c = decide_nonpositive(&f, &RatBox::unit(), b);
    assert!(c.witness.is_none());
    if c.budget_exhausted {
        assert!(!c.is_conclusive());
    }
}

fn arb_small_poly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..=2, 0u32..=2, -4i64..=4), 1..5).prop_map(|ts| {
        let mut f = BiPoly::zero();
        for (i, j, c) in ts {
            f.add_term(i, j, int(c));
        }
        f
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn negated_squares_are_nonpositive(h in arb_small_poly()) {
        let f = -(&h * &h);
        let c = decide_nonpositive(&f, &RatBox::unit(), Budget::default());
        prop_assert!(c.is_conclusive());
        prop_assert_eq!(c.verdict, SignVerdict::Nonpositive);
    }

    #[test]
    fn witnesses_are_positive(h in arb_small_poly(), shift in 1i64..5) {
        let f = &BiPoly::constant(rat(shift, 3)) - &(&h * &h);
        let c = decide_nonpositive(&f, &RatBox::unit(), Budget::default());
        prop_assert!(!f.is_zero());
        match c.verdict {
            SignVerdict::Positive => {
                let (x, y) = c.witness.unwrap();
                prop_assert!(f.eval(&x, &y) > int(0));
            }
            SignVerdict::Nonpositive => {
                for i in 0..=8 {
                    for j in 0..=8 {
                        prop_assert!(f.eval(&rat(i, 8), &rat(j, 8)) <= int(0));
                    }
                }
            }
        }
    }
}
