use apclab_core::exactpoly::rational::{int, rat};
use apclab_core::exactpoly::sturm::{isolate_roots, sturm_decide, SturmChain, UniVerdict};
use apclab_core::exactpoly::*;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn f111() -> BiPoly {
    // -4x^2y^2(xy-1)^2 expanded
    BiPoly::from_int_terms(&[(4, 4, -4), (3, 3, 8), (2, 2, -4)])
}

#[test]
fn eval_factored_anchor() {
    assert_eq!(bipoly_eval(&f111(), &rat(1, 2), &rat(1, 2)), rat(-9, 64));
}

#[test]
fn constant_term_at_origin() {
    let f = BiPoly::from_int_terms(&[(0, 0, -7), (1, 2, 3)]);
    assert_eq!(f.eval(&Rational::zero(), &Rational::zero()), int(-7));
}

#[test]
fn partials() {
    assert!(BiPoly::constant(int(5)).partial(Axis::X).is_zero());
    let x2y = BiPoly::from_int_terms(&[(2, 1, 1)]);
    assert_eq!(x2y.partial(Axis::X), BiPoly::from_int_terms(&[(1, 1, 2)]));
}

#[test]
fn edges() {
    assert!(BiPoly::zero().edge_restrict(Edge::Y1).is_zero());
    let f = BiPoly::from_int_terms(&[(1, 1, 1), (0, 0, 2), (2, 0, 3)]);
    assert_eq!(f.edge_restrict(Edge::X1), UniPoly::from_ints(&[5, 1]));
    assert_eq!(f.edge_restrict(Edge::Y0), UniPoly::from_ints(&[2, 0, 3]));
    assert_eq!(f.edge_restrict(Edge::X0), UniPoly::from_ints(&[2]));
}

#[test]
fn sturm_basic() {
    let (z, o) = (Rational::zero(), Rational::one());
    // -(x - 1/2)^2
    let g = UniPoly::new(vec![rat(-1, 4), int(1), int(-1)]);
    assert_eq!(sturm_decide(&g, &z, &o), UniVerdict::AllNonpositive);
    let h = UniPoly::new(vec![rat(-1, 3), int(1)]);
    match sturm_decide(&h, &z, &o) {
        UniVerdict::PositiveWitness(w) => assert!(w > rat(1, 3) && w <= o),
        v => panic!("{:?}", v),
    }
}

#[test]
fn sturm_counts_roots() {
    // (x-1/4)(x-1/2)(x-3/4) has three roots in (0,1]
    let p = &(&UniPoly::new(vec![rat(-1, 4), int(1)]) * &UniPoly::new(vec![rat(-1, 2), int(1)]))
        * &UniPoly::new(vec![rat(-3, 4), int(1)]);
    let c = SturmChain::new(&p);
    assert_eq!(c.count(&int(0), &int(1)), 3);
    assert_eq!(c.count(&int(0), &rat(1, 2)), 2);
    assert_eq!(c.count_open(&int(0), &rat(1, 2)), 1);
    let roots = isolate_roots(&p, &int(0), &int(1), &rat(1, 1000));
    assert_eq!(roots.len(), 3);
    for (r, want) in roots.iter().zip([rat(1, 4), rat(1, 2), rat(3, 4)]) {
        assert!(r.contains(&want), "{:?}", r);
    }
}

#[test]
fn isolation_width_default() {
    // x^2 - 1/5
    let p = UniPoly::new(vec![rat(-1, 5), int(0), int(1)]);
    let roots = isolate_roots(&p, &int(0), &int(1), &sturm::default_width());
    assert_eq!(roots.len(), 1);
    let r = &roots[0];
    assert!(r.width() <= sturm::default_width());
    let s = 1.0 / 5f64.sqrt();
    assert!(rational::to_f64(r.lo()) <= s && s <= rational::to_f64(r.hi()));
}

#[test]
fn bernstein_constant_and_corners() {
    let c = BiPoly::constant(int(3));
    for row in bernstein_coeffs(&c, &RatBox::unit()) {
        for v in row {
            assert_eq!(v, int(3));
        }
    }
    let f = BiPoly::from_int_terms(&[(2, 1, 3), (0, 1, -1), (1, 0, 2), (0, 0, 1)]);
    let bx = RatBox::new(rat(1, 4), rat(3, 4), rat(-1, 2), rat(1, 3)).unwrap();
    let b = bernstein_coeffs(&f, &bx);
    let (n, m) = (b.len() - 1, b[0].len() - 1);
    assert_eq!(b[0][0], f.eval(&bx.x_lo, &bx.y_lo));
    assert_eq!(b[n][0], f.eval(&bx.x_hi, &bx.y_lo));
    assert_eq!(b[0][m], f.eval(&bx.x_lo, &bx.y_hi));
    assert_eq!(b[n][m], f.eval(&bx.x_hi, &bx.y_hi));
}

#[test]
fn casteljau_matches_direct_conversion() {
    let f = BiPoly::from_int_terms(&[(3, 2, 5), (1, 1, -2), (0, 2, 1), (2, 0, -3)]);
    let p = BernsteinPatch::new(&f, &RatBox::unit());
    let (l, r) = p.split_x();
    assert_eq!(l, BernsteinPatch::new(&f, &l.bx));
    assert_eq!(r, BernsteinPatch::new(&f, &r.bx));
    let (d, u) = p.split_y();
    assert_eq!(d, BernsteinPatch::new(&f, &d.bx));
    assert_eq!(u, BernsteinPatch::new(&f, &u.bx));
}

#[test]
fn resultant_linear() {
    let a = BiPoly::from_int_terms(&[(0, 1, 1), (1, 0, -1)]);
    let b = BiPoly::from_int_terms(&[(0, 1, 1), (1, 0, -2)]);
    let r = resultant_y(&a, &b).unwrap();
    assert!(r == UniPoly::x() || r == -UniPoly::x());
    let q = BiPoly::from_int_terms(&[(0, 2, 1), (1, 1, 3), (0, 0, -1)]);
    assert!(resultant_y(&q, &q).unwrap().is_zero());
    assert!(resultant_y(&q, &BiPoly::zero()).is_err());
}

#[test]
fn resultant_vanishes_on_common_roots() {
    // a = y^2 - x, b = y - x^2 + 1: common roots where x = (x^2-1)^2
    let a = BiPoly::from_int_terms(&[(0, 2, 1), (1, 0, -1)]);
    let b = BiPoly::from_int_terms(&[(0, 1, 1), (2, 0, -1), (0, 0, 1)]);
    let r = resultant_y(&a, &b).unwrap();
    let direct = &UniPoly::from_ints(&[1, -1, -2, 0, 1]);
    assert!(r == *direct || r == -direct);
}

#[test]
fn gcd_and_division() {
    let u = BiPoly::from_int_terms(&[(1, 1, 2), (0, 0, -1)]);
    let v = BiPoly::from_int_terms(&[(0, 2, 1), (1, 0, 1)]);
    let w = BiPoly::from_int_terms(&[(1, 0, 1), (0, 1, -3)]);
    let g = resultant::gcd_xy(&(&u * &v), &(&u * &w));
    assert_eq!(resultant::normalize(&g), resultant::normalize(&u));
    assert_eq!((&u * &v).div_exact(&u).unwrap(), v);
    assert_eq!((&(&u * &v) + &BiPoly::constant(int(1))).div_exact(&u), Err(ExactDivisionError::NonzeroRemainder));
    let sq = resultant::squarefree_y(&(&(&u * &u) * &(&v * &BiPoly::from_int_terms(&[(1, 0, 1), (0, 0, 1)]))));
    assert_eq!(sq, resultant::normalize(&(&u * &v)));
}

#[test]
fn subresultant_gives_common_root() {
    // a = (y - x)(y + 1), b = (y - x)(y - 2): gcd in y is y - x
    let yx = BiPoly::from_int_terms(&[(0, 1, 1), (1, 0, -1)]);
    let a = &yx * &BiPoly::from_int_terms(&[(0, 1, 1), (0, 0, 1)]);
    let b = &yx * &BiPoly::from_int_terms(&[(0, 1, 1), (0, 0, -2)]);
    let s = subresultant_y(&a, &b, 1);
    // s1 y + s0 must be proportional to y - x
    assert_eq!(&s[0] + &(&s[1] * &UniPoly::x()), UniPoly::zero());
    assert!(!s[1].is_zero());
}

fn arb_bipoly() -> impl Strategy<Value = BiPoly> {
    prop::collection::vec((0u32..5, 0u32..5, -20i64..20, 1i64..6), 0..10)
        .prop_map(|ts| BiPoly::from_terms(ts.into_iter().map(|(i, j, n, d)| (i, j, rat(n, d)))))
}

fn arb_box() -> impl Strategy<Value = RatBox> {
    (-8i64..8, 1i64..8, -8i64..8, 1i64..8).prop_map(|(a, w, b, h)| {
        RatBox::new(rat(a, 4), rat(a + w, 4), rat(b, 4), rat(b + h, 4)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn derivation_is_linear(a in arb_bipoly(), b in arb_bipoly()) {
        for ax in [Axis::X, Axis::Y] {
            prop_assert_eq!((&a + &b).partial(ax), &a.partial(ax) + &b.partial(ax));
        }
    }

    #[test]
    fn pure_and_deterministic(a in arb_bipoly(), x in -5i64..5, y in -5i64..5) {
        let (x, y) = (rat(x, 3), rat(y, 2));
        prop_assert_eq!(a.eval(&x, &y), a.eval(&x, &y));
    }

    #[test]
    fn bernstein_encloses(f in arb_bipoly(), bx in arb_box(), pts in prop::collection::vec((0i64..=16, 0i64..=16), 100)) {
        let p = BernsteinPatch::new(&f, &bx);
        let (lo, hi) = (p.min(), p.max());
        for (u, v) in pts {
            let x = &bx.x_lo + bx.width() * rat(u, 16);
            let y = &bx.y_lo + bx.height() * rat(v, 16);
            let val = f.eval(&x, &y);
            prop_assert!(lo <= val && val <= hi);
        }
    }

    #[test]
    fn subdivision_stays_inside_parent(f in arb_bipoly(), bx in arb_box()) {
        let p = BernsteinPatch::new(&f, &bx);
        let (lo, hi) = (p.min(), p.max());
        let (l, r) = p.split_x();
        let (d, u) = p.split_y();
        for c in [l, r, d, u] {
            prop_assert!(lo <= c.min() && c.max() <= hi);
        }
    }

    #[test]
    fn sturm_agrees_with_sampling(cs in prop::collection::vec(-12i64..12, 1..10), shift in -3i64..3) {
        let mut g = UniPoly::from_ints(&cs);
        // Occasionally force a double root to exercise the squarefree path.
        if shift != 0 {
            let r = UniPoly::new(vec![rat(-shift.abs(), 4), int(1)]);
            g = -(&(&r * &r) * &g);
        }
        let verdict = sturm_decide(&g, &Rational::zero(), &Rational::one());
        let sampled_pos = (0..=256).any(|k| g.eval(&rat(k, 256)) > Rational::zero());
        match &verdict {
            UniVerdict::PositiveWitness(w) => prop_assert!(g.eval(w) > Rational::zero()),
            UniVerdict::AllNonpositive => prop_assert!(!sampled_pos),
        }
    }
}
