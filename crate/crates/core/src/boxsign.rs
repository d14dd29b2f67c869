//! Certified decision of `f <= 0` on a rational box.
//!
//! Three tiers: exact edge analysis, Bernstein subdivision, and exact
//! critical-point elimination when subdivision stalls on a zero of `f`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::exactpoly::rational::{int, rat, to_f64, Rational};
use crate::exactpoly::resultant::{gcd_xy, squarefree_y};
use crate::exactpoly::sturm::{bisect_once, isolate_roots, sign_at_root, sturm_decide, vanishes_at_root, RootInterval, UniVerdict};
use crate::exactpoly::{subresultant_y, resultant_y, Axis, BernsteinPatch, BiPoly, Edge, RatBox, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignVerdict {
    Nonpositive,
    Positive,
}

/// Subdivision limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Budget {
    pub max_depth: u32,
    /// Cap on visited subdivision nodes; hitting it counts as a stall.
    pub max_nodes: usize,
    /// Exact critical-point elimination after a stall.
    pub tier3: bool,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_depth: 24, max_nodes: 20_000, tier3: true }
    }
}

impl Budget {
    pub fn with_depth(max_depth: u32) -> Self {
        Budget { max_depth, ..Budget::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub edge: Edge,
    pub verdict: UniVerdict,
}

/// Why a leaf box is known to satisfy `f <= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LeafKind {
    /// Every Bernstein coefficient of `f` on the leaf is `<= 0`.
    Bernstein,
    /// `f` is monotone towards the named (certified) edge of the whole box.
    Monotone(Edge),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Leaf {
    pub bx: RatBox,
    pub kind: LeafKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CriticalSource {
    /// Isolated solution of `f_x = f_y = 0`.
    Isolated,
    /// Point on a curve of critical points (common factor of `f_x`, `f_y`).
    Curve,
}

/// An interior critical point: its x-coordinate is the unique root of the
/// eliminant inside `[x_lo, x_hi]`, the y-coordinate is recorded as a float.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint {
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub x_approx: f64,
    pub y_approx: f64,
    /// Exact sign of `f` at the point.
    pub sign: i8,
    pub source: CriticalSource,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SignCertificate {
    pub verdict: SignVerdict,
    pub witness: Option<(Rational, Rational)>,
    pub edges: Vec<EdgeRecord>,
    pub leaves: Vec<Leaf>,
    pub critical_points: Vec<CriticalPoint>,
    /// Degenerate situations tier 3 could not resolve.
    pub limitations: Vec<String>,
    pub budget_exhausted: bool,
}

impl SignCertificate {
    fn positive(edges: Vec<EdgeRecord>, w: (Rational, Rational)) -> Self {
        SignCertificate {
            verdict: SignVerdict::Positive,
            witness: Some(w),
            edges,
            leaves: Vec::new(),
            critical_points: Vec::new(),
            limitations: Vec::new(),
            budget_exhausted: false,
        }
    }

    /// Verdict is backed by complete evidence.
    pub fn is_conclusive(&self) -> bool {
        !self.budget_exhausted
    }
}

fn edge_poly(f: &BiPoly, bx: &RatBox, e: Edge) -> (UniPoly, Rational, Rational) {
    match e {
        Edge::X0 => (f.subs_x(&bx.x_lo), bx.y_lo.clone(), bx.y_hi.clone()),
        Edge::X1 => (f.subs_x(&bx.x_hi), bx.y_lo.clone(), bx.y_hi.clone()),
        Edge::Y0 => (f.subs_y(&bx.y_lo), bx.x_lo.clone(), bx.x_hi.clone()),
        Edge::Y1 => (f.subs_y(&bx.y_hi), bx.x_lo.clone(), bx.x_hi.clone()),
    }
}

fn edge_point(bx: &RatBox, e: Edge, t: Rational) -> (Rational, Rational) {
    match e {
        Edge::X0 => (bx.x_lo.clone(), t),
        Edge::X1 => (bx.x_hi.clone(), t),
        Edge::Y0 => (t, bx.y_lo.clone()),
        Edge::Y1 => (t, bx.y_hi.clone()),
    }
}

/// Decides `f <= 0` on `bx`.
pub fn decide_nonpositive(f: &BiPoly, bx: &RatBox, budget: Budget) -> SignCertificate {
    // Tier 1: edges.
    let mut edges = Vec::with_capacity(4);
    for e in Edge::ALL {
        let (g, lo, hi) = edge_poly(f, bx, e);
        let v = sturm_decide(&g, &lo, &hi);
        if let UniVerdict::PositiveWitness(t) = &v {
            let w = edge_point(bx, e, t.clone());
            edges.push(EdgeRecord { edge: e, verdict: v });
            return SignCertificate::positive(edges, w);
        }
        edges.push(EdgeRecord { edge: e, verdict: v });
    }
    if f.is_zero() {
        return SignCertificate {
            verdict: SignVerdict::Nonpositive,
            witness: None,
            edges,
            leaves: vec![Leaf { bx: bx.clone(), kind: LeafKind::Bernstein }],
            critical_points: Vec::new(),
            limitations: Vec::new(),
            budget_exhausted: false,
        };
    }

    // Tier 2: subdivision.
    let fx = f.partial(Axis::X);
    let fy = f.partial(Axis::Y);
    let mut leaves = Vec::new();
    let mut stalled = false;
    let mut nodes = 0usize;
    let mut stack = vec![(BernsteinPatch::new(f, bx), 0u32)];
    while let Some((patch, depth)) = stack.pop() {
        nodes += 1;
        if patch.all_nonpositive() {
            leaves.push(Leaf { bx: patch.bx.clone(), kind: LeafKind::Bernstein });
            continue;
        }
        if let Some(w) = positive_sample(f, &patch.bx) {
            return SignCertificate::positive(edges, w);
        }
        if let Some(e) = monotone_edge(&fx, &fy, bx, &patch.bx) {
            leaves.push(Leaf { bx: patch.bx.clone(), kind: LeafKind::Monotone(e) });
            continue;
        }
        if depth >= budget.max_depth || nodes >= budget.max_nodes {
            stalled = true;
            if budget.tier3 {
                break;
            }
            continue;
        }
        let (a, b) = if patch.bx.width() >= patch.bx.height() { patch.split_x() } else { patch.split_y() };
        // Pop order: lower/left child first.
        stack.push((b, depth + 1));
        stack.push((a, depth + 1));
    }
    leaves.sort();

    let mut cert = SignCertificate {
        verdict: SignVerdict::Nonpositive,
        witness: None,
        edges,
        leaves,
        critical_points: Vec::new(),
        limitations: Vec::new(),
        budget_exhausted: false,
    };
    if !stalled {
        return cert;
    }
    if !budget.tier3 {
        cert.budget_exhausted = true;
        return cert;
    }

    // Tier 3: every interior maximum is a critical point.
    let crit = critical_analysis(f, bx);
    cert.critical_points = crit.points;
    cert.limitations = crit.limitations;
    if let Some(w) = crit.witness {
        cert.verdict = SignVerdict::Positive;
        cert.witness = Some(w);
        cert.leaves.clear();
        cert.budget_exhausted = false;
        return cert;
    }
    if !cert.limitations.is_empty() {
        cert.budget_exhausted = true;
    }
    cert
}

fn positive_sample(f: &BiPoly, b: &RatBox) -> Option<(Rational, Rational)> {
    let (cx, cy) = b.center();
    let mut pts = vec![(cx, cy)];
    pts.extend(b.corners());
    pts.into_iter().find(|(x, y)| f.eval(x, y) > Rational::zero())
}

/// A sub-box touching a side of the whole box on which `f` is monotone
/// towards that side inherits the side's certified sign.
fn monotone_edge(fx: &BiPoly, fy: &BiPoly, whole: &RatBox, b: &RatBox) -> Option<Edge> {
    let candidates = [
        (b.x_hi == whole.x_hi, Edge::X1),
        (b.x_lo == whole.x_lo, Edge::X0),
        (b.y_hi == whole.y_hi, Edge::Y1),
        (b.y_lo == whole.y_lo, Edge::Y0),
    ];
    for (touch, e) in candidates {
        if !touch {
            continue;
        }
        let ok = match e {
            Edge::X1 => BernsteinPatch::new(fx, b).all_nonnegative(),
            Edge::X0 => BernsteinPatch::new(fx, b).all_nonpositive(),
            Edge::Y1 => BernsteinPatch::new(fy, b).all_nonnegative(),
            Edge::Y0 => BernsteinPatch::new(fy, b).all_nonpositive(),
        };
        if ok {
            return Some(e);
        }
    }
    None
}

/// Result of exact critical-point elimination.
#[derive(Clone, Debug, Default)]
pub struct CriticalOutcome {
    pub points: Vec<CriticalPoint>,
    pub witness: Option<(Rational, Rational)>,
    pub limitations: Vec<String>,
}

/// Signs of `f` at all critical points in the open box.
pub fn critical_analysis(f: &BiPoly, bx: &RatBox) -> CriticalOutcome {
    let mut out = CriticalOutcome::default();
    let fx = f.partial(Axis::X);
    let fy = f.partial(Axis::Y);
    if fx.is_zero() && fy.is_zero() {
        return out;
    }
    let g = gcd_xy(&fx, &fy);
    let a = fx.div_exact(&g).expect("gcd divides f_x");
    let b = fy.div_exact(&g).expect("gcd divides f_y");
    let mut systems = vec![(a, b, CriticalSource::Isolated)];
    // Vertical line components of the critical curve reach the boundary, so
    // only the y-primitive part needs examining.
    let gs = squarefree_y(&g);
    if gs.deg_y().unwrap_or(0) >= 1 {
        let gy = gs.partial(Axis::Y);
        systems.push((gs, gy, CriticalSource::Curve));
    }
    for (a, b, src) in systems {
        match solve_both_ways(&a, &b, bx, f, src) {
            Ok(sol) => {
                out.points.extend(sol.points);
                if sol.witness.is_some() && out.witness.is_none() {
                    out.witness = sol.witness;
                }
            }
            Err(msg) => out.limitations.push(msg),
        }
        if out.witness.is_some() {
            break;
        }
    }
    out.points.sort_by(|p, q| p.x_lo.cmp(&q.x_lo).then(p.source.cmp(&q.source)).then(p.y_approx.total_cmp(&q.y_approx)));
    out
}

struct Solved {
    points: Vec<CriticalPoint>,
    witness: Option<(Rational, Rational)>,
}

fn solve_both_ways(a: &BiPoly, b: &BiPoly, bx: &RatBox, f: &BiPoly, src: CriticalSource) -> Result<Solved, String> {
    match solve_system(a, b, bx, f, src) {
        Ok(s) => Ok(s),
        Err(first) => {
            let t = RatBox { x_lo: bx.y_lo.clone(), x_hi: bx.y_hi.clone(), y_lo: bx.x_lo.clone(), y_hi: bx.x_hi.clone() };
            match solve_system(&a.swap_xy(), &b.swap_xy(), &t, &f.swap_xy(), src) {
                Ok(mut s) => {
                    for p in s.points.iter_mut() {
                        // Report in original coordinates; the exact interval now bounds y.
                        core::mem::swap(&mut p.x_approx, &mut p.y_approx);
                    }
                    s.witness = s.witness.map(|(u, v)| (v, u));
                    Ok(s)
                }
                Err(second) => Err(alloc::format!("{}; transposed: {}", first, second)),
            }
        }
    }
}

fn is_const(p: &BiPoly) -> bool {
    p.deg_x().unwrap_or(0) == 0 && p.deg_y().unwrap_or(0) == 0
}

/// Real solutions of `a = b = 0` (assumed finitely many) inside the open box,
/// with the exact sign of `f` at each.
fn solve_system(a: &BiPoly, b: &BiPoly, bx: &RatBox, f: &BiPoly, src: CriticalSource) -> Result<Solved, String> {
    let mut solved = Solved { points: Vec::new(), witness: None };
    if a.is_zero() || b.is_zero() {
        let other = if a.is_zero() { b } else { a };
        if other.is_zero() || !is_const(other) {
            return Err(String::from("critical system is not zero-dimensional"));
        }
        return Ok(solved);
    }
    if (is_const(a) && !a.is_zero()) || (is_const(b) && !b.is_zero()) {
        return Ok(solved);
    }
    let r = resultant_y(a, b).map_err(|e| alloc::format!("{}", e))?;
    if r.is_zero() {
        return Err(String::from("eliminant vanishes identically"));
    }
    if r.degree() == Some(0) {
        return Ok(solved);
    }
    let m = r.squarefree();
    let roots = isolate_roots(&m, &bx.x_lo, &bx.x_hi, &rat(1, 1 << 10));
    let d = f.deg_y().unwrap_or(0);
    let fcols = f.y_coeffs();
    for mut root in roots {
        if root.contains(&bx.x_lo) || root.contains(&bx.x_hi) {
            if let RootInterval::Exact(_) = root {
                continue;
            }
        }
        if !root_interior(&root, bx) {
            continue;
        }
        // Choose the equation whose y-leading coefficient survives at the root.
        let lca = a.y_coeffs().last().cloned().unwrap_or_default();
        let lcb = b.y_coeffs().last().cloned().unwrap_or_default();
        let (p, q) = if !vanishes_at_root(&lca, &m, &root) {
            (a, b)
        } else if !vanishes_at_root(&lcb, &m, &root) {
            (b, a)
        } else {
            return Err(String::from("both leading coefficients vanish over a root"));
        };
        let dq = q.deg_y().unwrap_or(0);
        if p.deg_y().unwrap_or(0) == 0 {
            continue;
        }
        if dq == 0 {
            return Err(String::from("critical set contains a vertical fibre"));
        }
        let s = subresultant_y(p, q, 1);
        let (s10, s11) = (&s[0], &s[1]);
        let sg11 = sign_at_root(s11, &m, &mut root);
        if sg11 == 0 {
            return Err(String::from("more than one critical point over a root"));
        }
        // eta = -s10 / s11; inside (y_lo, y_hi) iff both tests are positive.
        let lo_test = &(-s10) - &s11.scale(&bx.y_lo);
        let hi_test = &s11.scale(&bx.y_hi) + s10;
        if sign_at_root(&lo_test, &m, &mut root) * sg11 <= 0 || sign_at_root(&hi_test, &m, &mut root) * sg11 <= 0 {
            continue;
        }
        // f(xi, eta) * s11(xi)^d = sum_j f_j(xi) (-s10(xi))^j s11(xi)^(d-j).
        let neg_s10 = -s10;
        let mut f1 = UniPoly::zero();
        for (j, fj) in fcols.iter().enumerate() {
            f1 = &f1 + &(&(fj * &neg_s10.pow(j as u32)) * &s11.pow((d as usize - j) as u32));
        }
        let sg = sign_at_root(&f1, &m, &mut root) * if d % 2 == 1 { sg11 } else { 1 };
        let xm = root.mid();
        let ym = {
            let den = s11.eval(&xm);
            if den.is_zero() {
                f64::NAN
            } else {
                to_f64(&(-s10.eval(&xm) / den))
            }
        };
        solved.points.push(CriticalPoint {
            x_lo: root.lo().clone(),
            x_hi: root.hi().clone(),
            x_approx: to_f64(&xm),
            y_approx: ym,
            sign: sg,
            source: src,
        });
        if sg > 0 {
            solved.witness = rational_witness(f, bx, &m, root, s10, s11);
            if solved.witness.is_none() {
                return Err(String::from("positive critical value but no rational witness found"));
            }
            return Ok(solved);
        }
    }
    Ok(solved)
}

fn root_interior(root: &RootInterval, bx: &RatBox) -> bool {
    match root {
        RootInterval::Exact(x) => &bx.x_lo < x && x < &bx.x_hi,
        // Isolation intervals never hold an endpoint root unless it is exact.
        RootInterval::Open(..) => true,
    }
}

/// Rational point near a positive critical point where `f > 0`.
fn rational_witness(
    f: &BiPoly,
    bx: &RatBox,
    m: &UniPoly,
    mut root: RootInterval,
    s10: &UniPoly,
    s11: &UniPoly,
) -> Option<(Rational, Rational)> {
    for _ in 0..400 {
        let x = root.mid();
        let den = s11.eval(&x);
        if !den.is_zero() {
            let y = -s10.eval(&x) / den;
            if bx.contains(&x, &y) && f.eval(&x, &y) > Rational::zero() {
                return Some((x, y));
            }
        }
        match &root {
            RootInterval::Exact(_) => return None,
            RootInterval::Open(a, b) => root = bisect_once(m, a, b),
        }
    }
    None
}

/// Max of `f` over a `grid x grid` lattice (corners included), evaluated
/// exactly and rounded. A lower bound for the true maximum; never a verdict.
pub fn float_max_estimate(f: &BiPoly, bx: &RatBox, grid: u32) -> f64 {
    assert!(grid >= 2, "grid must be at least 2");
    let steps = int(grid as i64 - 1);
    let mut best: Option<Rational> = None;
    for i in 0..grid {
        let x = &bx.x_lo + bx.width() * int(i as i64) / &steps;
        for j in 0..grid {
            let y = &bx.y_lo + bx.height() * int(j as i64) / &steps;
            let v = f.eval(&x, &y);
            if best.as_ref().is_none_or(|b| &v > b) {
                best = Some(v);
            }
        }
    }
    to_f64(&best.unwrap_or_else(Rational::zero))
}

