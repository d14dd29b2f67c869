//! Sturm sequences, exact real-root isolation and univariate sign decisions.

use alloc::vec::Vec;

use num_traits::Signed;

use super::rational::{half, rat, Rational};
use super::uni::UniPoly;

/// Default isolation width, `2^-32`.
pub fn default_width() -> Rational {
    rat(1, 1 << 32)
}

/// Sturm chain of a polynomial, built from sign-corrected pseudo-remainders
/// with the positive content divided out at every step.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        let mut chain = Vec::new();
        if p.is_zero() {
            return SturmChain { chain };
        }
        let a = p.strip_content();
        let b = p.derivative().strip_content();
        chain.push(a);
        if b.is_zero() {
            return SturmChain { chain };
        }
        chain.push(b);
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            let da = a.degree().unwrap();
            let db = b.degree().unwrap();
            let r = a.prem(b);
            if r.is_zero() {
                break;
            }
            // prem = lc(b)^(da-db+1) * rem; the chain needs -rem up to a positive factor.
            let odd = (da - db + 1) % 2 == 1;
            let flip = b.lc().is_negative() && odd;
            let next = if flip { r.strip_content() } else { -r.strip_content() };
            chain.push(next);
        }
        SturmChain { chain }
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.chain
    }

    /// Sign variations at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        if self.chain.is_empty() {
            return 0;
        }
        self.variations(a).saturating_sub(self.variations(b))
    }

    /// Distinct real roots strictly inside `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let c = self.count(a, b);
        if !self.chain.is_empty() && self.chain[0].sign_at(b) == 0 {
            c - 1
        } else {
            c
        }
    }
}

/// A real root, either known exactly or pinned inside an open interval whose
/// endpoints are not roots and which holds exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootInterval {
    Exact(Rational),
    Open(Rational, Rational),
}

impl RootInterval {
    pub fn lo(&self) -> &Rational {
        match self {
            RootInterval::Exact(r) => r,
            RootInterval::Open(a, _) => a,
        }
    }

    pub fn hi(&self) -> &Rational {
        match self {
            RootInterval::Exact(r) => r,
            RootInterval::Open(_, b) => b,
        }
    }

    pub fn width(&self) -> Rational {
        self.hi() - self.lo()
    }

    /// A representative point (the root itself or the midpoint).
    pub fn mid(&self) -> Rational {
        half(self.lo(), self.hi())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            RootInterval::Exact(r) => r == x,
            RootInterval::Open(a, b) => a < x && x < b,
        }
    }
}

/// Isolates every distinct real root of `p` in the closed interval `[lo, hi]`,
/// sorted increasingly, each open interval of width at most `width`.
pub fn isolate_roots(p: &UniPoly, lo: &Rational, hi: &Rational, width: &Rational) -> Vec<RootInterval> {
    assert!(lo <= hi, "empty interval");
    if p.is_zero() || p.degree() == Some(0) {
        return Vec::new();
    }
    let s = p.squarefree();
    let chain = SturmChain::new(&s);
    let mut out = Vec::new();
    if s.sign_at(lo) == 0 {
        out.push(RootInterval::Exact(lo.clone()));
    }
    if lo < hi {
        isolate_rec(&s, &chain, lo.clone(), hi.clone(), &mut out);
    }
    for r in out.iter_mut() {
        refine_to(&s, r, width);
    }
    out
}

// Roots in (a, b].
fn isolate_rec(s: &UniPoly, chain: &SturmChain, a: Rational, b: Rational, out: &mut Vec<RootInterval>) {
    let n = chain.count(&a, &b);
    if n == 0 {
        return;
    }
    let b_root = s.sign_at(&b) == 0;
    if n == 1 {
        if b_root {
            out.push(RootInterval::Exact(b));
            return;
        }
        if s.sign_at(&a) != 0 {
            out.push(RootInterval::Open(a, b));
            return;
        }
    }
    let m = half(&a, &b);
    isolate_rec(s, chain, a, m.clone(), out);
    isolate_rec(s, chain, m, b, out);
}

/// Shrinks an isolating interval of a squarefree `s` by bisection.
pub fn refine_to(s: &UniPoly, r: &mut RootInterval, width: &Rational) {
    while let RootInterval::Open(a, b) = r {
        if &(&*b - &*a) <= width {
            break;
        }
        *r = bisect_once(s, a, b);
    }
}

/// One bisection step on an open isolating interval of squarefree `s`.
pub fn bisect_once(s: &UniPoly, a: &Rational, b: &Rational) -> RootInterval {
    let m = half(a, b);
    let sm = s.sign_at(&m);
    if sm == 0 {
        return RootInterval::Exact(m);
    }
    if sm == s.sign_at(a) {
        RootInterval::Open(m, b.clone())
    } else {
        RootInterval::Open(a.clone(), m)
    }
}

/// Result of [`sturm_decide`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniVerdict {
    AllNonpositive,
    PositiveWitness(Rational),
}

/// Decides whether `g <= 0` on `[lo, hi]`. Complete: sign is constant between
/// consecutive roots, so one exact sample per sign component suffices.
pub fn sturm_decide(g: &UniPoly, lo: &Rational, hi: &Rational) -> UniVerdict {
    assert!(lo < hi, "sturm_decide needs lo < hi");
    if g.is_zero() {
        return UniVerdict::AllNonpositive;
    }
    if g.degree() == Some(0) {
        return if g.lc().is_positive() { UniVerdict::PositiveWitness(lo.clone()) } else { UniVerdict::AllNonpositive };
    }
    let s = g.squarefree();
    let chain = SturmChain::new(&s);
    let mut stack = alloc::vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let ga = g.sign_at(&a);
        if ga > 0 {
            return UniVerdict::PositiveWitness(a);
        }
        let gb = g.sign_at(&b);
        if gb > 0 {
            return UniVerdict::PositiveWitness(b);
        }
        let inner = chain.count_open(&a, &b);
        let m = half(&a, &b);
        if inner == 0 {
            if g.sign_at(&m) > 0 {
                return UniVerdict::PositiveWitness(m);
            }
            continue;
        }
        if inner == 1 && ga != 0 && gb != 0 {
            // Both sign components touch a nonzero endpoint.
            continue;
        }
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    UniVerdict::AllNonpositive
}

/// Sign of `h` at the unique root of squarefree `m` isolated by `root`;
/// refines `root` in place as needed.
pub fn sign_at_root(h: &UniPoly, m: &UniPoly, root: &mut RootInterval) -> i8 {
    if h.is_zero() {
        return 0;
    }
    if let RootInterval::Exact(x) = root {
        return h.sign_at(x);
    }
    if vanishes_at_root(h, m, root) {
        return 0;
    }
    let hs = h.squarefree();
    let hc = SturmChain::new(&hs);
    loop {
        let (a, b) = match root {
            RootInterval::Exact(x) => return h.sign_at(x),
            RootInterval::Open(a, b) => (a.clone(), b.clone()),
        };
        if hc.count(&a, &b) == 0 && hs.sign_at(&a) != 0 {
            return h.sign_at(&b);
        }
        *root = bisect_once(m, &a, &b);
    }
}

/// Whether `h` vanishes at the root of squarefree `m` isolated by `root`.
pub fn vanishes_at_root(h: &UniPoly, m: &UniPoly, root: &RootInterval) -> bool {
    match root {
        RootInterval::Exact(x) => h.sign_at(x) == 0,
        RootInterval::Open(a, b) => {
            let g = m.gcd(h);
            if g.degree().unwrap_or(0) == 0 {
                return false;
            }
            SturmChain::new(&g).count_open(a, b) > 0
        }
    }
}

/// Convenience: the real roots of `p` in `[lo, hi]` as floating midpoints.
pub fn approx_roots(p: &UniPoly, lo: &Rational, hi: &Rational) -> Vec<f64> {
    isolate_roots(p, lo, hi, &default_width()).iter().map(|r| super::rational::to_f64(&r.mid())).collect()
}
