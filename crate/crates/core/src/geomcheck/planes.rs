//! Explicit plane candidates and the checks built on them.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{ToPrimitive, Zero};

use super::matrix::{c, det3, solve_real, wedge_norm, CMatrix, C64, I};
use super::{frame_point, kerin_residuals, phi1, to_kerin, to_wilking, wilking_residuals, GeomError, MetricParams, ResidualReport};
use crate::eschenburg::{build_f, is_admissible, Triple, TABULATED};
use crate::exactpoly::rational::{big, int, sign, to_f64};
use crate::exactpoly::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaneType {
    I,
    II,
    III,
    IV,
    V,
}

impl PlaneType {
    /// `1` for type (iv), `0` for type (v).
    pub fn epsilon(self) -> f64 {
        if self == PlaneType::IV {
            1.0
        } else {
            0.0
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCandidate {
    pub kind: PlaneType,
    pub x: CMatrix,
    pub y: CMatrix,
    pub alpha: f64,
    pub beta: f64,
    /// `(x_2, .., x_{n+1})`.
    pub xs: Vec<C64>,
    /// `(y_3, .., y_{n+1})`.
    pub ys: Vec<C64>,
    pub t: f64,
    pub r: f64,
}

impl PlaneCandidate {
    pub fn n(&self) -> usize {
        self.x.dim() - 1
    }

    pub fn frame(&self) -> CMatrix {
        frame_point(self.t, self.r, self.n())
    }

    /// Zero-pads `X` and `Y` (and the vectors) to `u(n+1)`.
    pub fn padded(&self, n: usize) -> PlaneCandidate {
        let mut out = self.clone();
        out.x = self.x.pad(n + 1);
        out.y = self.y.pad(n + 1);
        if matches!(self.kind, PlaneType::IV | PlaneType::V) {
            out.xs.resize(n, c(0.0, 0.0));
            out.ys.resize(n - 1, c(0.0, 0.0));
        }
        out
    }
}

/// Builds the type (iv)/(v) matrices: `X` has `i alpha` at `(0,0)` and `x`
/// below it; `Y` has `i` (type iv) or `0` (type v) at `(0,0)`, `i beta` at
/// `(1,1)` and `y` below it.
pub fn type_iv_v(kind: PlaneType, alpha: f64, xs: &[C64], beta: f64, ys: &[C64], t: f64, r: f64) -> PlaneCandidate {
    assert!(matches!(kind, PlaneType::IV | PlaneType::V));
    let n = xs.len();
    assert!(n >= 2 && ys.len() == n - 1);
    let mut x = CMatrix::zeros(n + 1);
    x[(0, 0)] = c(0.0, alpha);
    for (j, v) in xs.iter().enumerate() {
        x[(j + 1, 0)] = *v;
        x[(0, j + 1)] = -v.conj();
    }
    let mut y = CMatrix::zeros(n + 1);
    y[(0, 0)] = c(0.0, kind.epsilon());
    y[(1, 1)] = c(0.0, beta);
    for (j, v) in ys.iter().enumerate() {
        y[(j + 2, 1)] = *v;
        y[(1, j + 2)] = -v.conj();
    }
    PlaneCandidate { kind, x, y, alpha, beta, xs: xs.to_vec(), ys: ys.to_vec(), t, r }
}

fn f64_of(v: &num_bigint::BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Left-hand sides of the two horizontality equations for types (iv)/(v),
/// first the `X` equation, then the `Y` equation.
pub fn horizontality_scalars(t: f64, r: f64, tri: &Triple, cand: &PlaneCandidate, params: &MetricParams) -> (f64, f64) {
    let (p, q1, q2) = (f64_of(&tri.p), f64_of(&tri.q1), f64_of(&tri.q2));
    let (ct, st, cr, sr) = (libm::cos(t), libm::sin(t), libm::cos(r), libm::sin(r));
    let eps = cand.kind.epsilon();
    let la = params.lambda1 * cand.alpha;
    let (x2, x3, y3) = (cand.xs[0], cand.xs[1], cand.ys[0]);
    let e42 = la * (p * ct * ct * cr * cr - q1) + 2.0 * p * (eps * x2.im * ct * ct * sr + x3.im * ct * st) * cr;
    let e41 = p * ct * ct * (cand.beta * sr * sr + eps * cr * cr) + 2.0 * p * y3.im * ct * st * sr
        - cand.beta * q2
        - eps * q1;
    (e42, e41)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VwReport {
    pub v: Vec<C64>,
    pub w: Vec<C64>,
    pub v_direct: Vec<C64>,
    pub w_direct: Vec<C64>,
    /// Which entries of the conjugated matrices reproduce the formulas.
    pub matched: &'static str,
    pub discrepancy: f64,
    /// Discrepancy of the other reading, for the record.
    pub other_discrepancy: f64,
    /// Dependence residual of `V`, `W` (scale-free).
    pub dependence: f64,
}

fn dist(a: &[C64], b: &[C64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    libm::sqrt(a.iter().zip(b).map(|(u, v)| (u - v).norm_sqr()).sum::<f64>())
}

fn vnorm(a: &[C64]) -> f64 {
    libm::sqrt(a.iter().map(|u| u.norm_sqr()).sum::<f64>())
}

/// `V` and `W` from their closed forms, compared against the first column
/// and against the second row of `Ad_{B^-1}(phi1 X)` and `Ad_{B^-1} Y`.
pub fn vw_vectors(t: f64, r: f64, cand: &PlaneCandidate, params: &MetricParams) -> VwReport {
    let (ct, st, cr, sr) = (libm::cos(t), libm::sin(t), libm::cos(r), libm::sin(r));
    let eps = cand.kind.epsilon();
    let la = params.lambda1 * cand.alpha;
    let beta = cand.beta;
    let (x2, x3, y3) = (cand.xs[0], cand.xs[1], cand.ys[0]);
    let mut v = vec![
        (x2 * (eps * cr * cr) + x2.conj() * (eps * sr * sr) - I * (la * cr * sr)) * ct + x3.conj() * (sr * st),
        (x3 * (ct * ct) + (-I * (la * cr) - I * (2.0 * eps * x2.im * sr)) * (st * ct) + x3.conj() * (st * st)) * cr,
    ];
    let mut w = vec![
        (I * ((beta - eps) * sr * ct) - y3.conj() * st) * cr,
        y3 * (ct * ct * sr) - I * ((beta * sr * sr + eps * cr * cr) * st * ct) + y3.conj() * (st * st * sr),
    ];
    for xj in &cand.xs[2..] {
        v.push(xj * (ct * cr));
    }
    for yj in &cand.ys[1..] {
        w.push(yj * (ct * sr));
    }
    let b = frame_point(t, r, cand.n());
    let ax = phi1(&cand.x, params).conjugate_by_inverse(&b);
    let ay = cand.y.conjugate_by_inverse(&b);
    let col = (ax.column_tail(0, 1), ay.column_tail(0, 1));
    let row = (ax.row_offdiag(1), ay.row_offdiag(1));
    let d_col = dist(&v, &col.0).max(dist(&w, &col.1));
    let d_row = dist(&v, &row.0).max(dist(&w, &row.1));
    let dep = {
        let s = vnorm(&v) * vnorm(&w);
        let m = wedge_norm(&v, &w);
        if s > 0.0 {
            m / s
        } else {
            m
        }
    };
    let (matched, disc, other, direct) = if d_col <= d_row {
        ("column 1, rows 2..n+1", d_col, d_row, col)
    } else {
        ("row 2, off-diagonal", d_row, d_col, row)
    };
    VwReport { v, w, v_direct: direct.0, w_direct: direct.1, matched, discrepancy: disc, other_discrepancy: other, dependence: dep }
}

/// True for the four triples the polynomial criterion does not cover.
pub fn is_excluded(tri: &Triple) -> bool {
    TABULATED.iter().any(|((p, q1, q2), _)| *tri == Triple::new(*p, *q1, *q2))
}

/// Exact data of the construction at `(x, y) = (cos^2 r, cos^2 t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionData {
    pub f: Rational,
    /// `p x y - q1`, the denominator of `lambda1 alpha`.
    pub den_alpha: Rational,
    /// `p y (1 - x) - q2`, the denominator of `beta`.
    pub den_beta: Rational,
    /// `p (p - 2 q1 - q2) x y + q1 (p - q2)`, the polynomial factor of the
    /// denominator of `Im(y3)`.
    pub den_im: Rational,
    /// Numerator of `Im(y3)`.
    pub num_im: Rational,
    /// `beta` after eliminating `Im(y3)`.
    pub beta: Rational,
}

pub fn construction_data(tri: &Triple, x: &Rational, y: &Rational) -> ConstructionData {
    let (p, q1, q2) = (big(&tri.p), big(&tri.q1), big(&tri.q2));
    let one = int(1);
    let xy = x * y;
    let den_alpha = &p * &xy - &q1;
    let den_beta = &p * y * (&one - x) - &q2;
    let den_im = &p * (&p - &q1 * int(2) - &q2) * &xy + &q1 * (&p - &q2);
    let num_im = ((&q1 - &q2) * x + &p - &q1 * int(3)) * &p * x * y * y
        + ((-(&p * &q2) + &q1 * (&q1 + &q2 * int(3))) * x + &p * &q1 * (&one - x)) * y
        - &q1 * &q1 * (&one - y)
        - &q1 * &q2;
    let beta_num = &p * (&p - &q1 * int(3)) * &xy + &q1 * (&p + &q1);
    let beta = if den_im.is_zero() { Rational::zero() } else { beta_num / &den_im };
    let f = build_f(tri).eval(x, y);
    ConstructionData { f, den_alpha, den_beta, den_im, num_im, beta }
}

/// Builds the type (iv) plane with `V = W` and `y_j = 0` for `j >= 4` at
/// `(t, r) = (arccos sqrt y, arccos sqrt x)`, padded to `u(n+1)`.
pub fn construct_zero_plane(
    tri: &Triple,
    x: &Rational,
    y: &Rational,
    params: &MetricParams,
    n: usize,
) -> Result<PlaneCandidate, GeomError> {
    if n < 2 {
        return Err(GeomError::DimensionTooSmall(n));
    }
    if !is_admissible(tri) {
        return Err(GeomError::Inadmissible(tri.clone()));
    }
    if is_excluded(tri) {
        return Err(GeomError::Excluded(tri.clone()));
    }
    let zero = Rational::zero();
    let one = int(1);
    if !(x > &zero && x < &one && y > &zero && y < &one) {
        return Err(GeomError::OutsideOpenSquare);
    }
    let d = construction_data(tri, x, y);
    if sign(&d.f) < 0 {
        return Err(GeomError::NegativeF(d.f));
    }
    if d.den_im.is_zero() {
        return Err(GeomError::VanishingDenominator("p(p - 2q1 - q2) x y + q1(p - q2)"));
    }
    if d.den_alpha.is_zero() {
        return Err(GeomError::VanishingDenominator("p x y - q1"));
    }
    if d.den_beta.is_zero() {
        return Err(GeomError::VanishingDenominator("p y (1 - x) - q2"));
    }
    let (xf, yf) = (to_f64(x), to_f64(y));
    let (cr, sr, ct, st) = (libm::sqrt(xf), libm::sqrt(1.0 - xf), libm::sqrt(yf), libm::sqrt(1.0 - yf));
    let (t, r) = (libm::acos(ct), libm::acos(cr));
    let (p, q1, q2) = (f64_of(&tri.p), f64_of(&tri.q1), f64_of(&tri.q2));

    let im = to_f64(&d.num_im) / (-2.0 * sr * st * ct * to_f64(&d.den_im));
    // Solved from the Y horizontality equation.
    let beta = -(2.0 * p * im * st * sr * ct + p * ct * ct * cr * cr - q1) / (p * ct * ct * sr * sr - q2);
    let re = if d.f.is_zero() { 0.0 } else { libm::sqrt((1.0 - beta - im * im).max(0.0)) };
    let y3 = c(re, im);
    let x2 = (I * (sr * ct) - y3.conj() * st) / (ct * cr);
    let x3 = (y3 * (sr * ct) + I * ((1.0 - beta) * st)) / (ct * cr);
    // Solved from the X horizontality equation.
    let la = -2.0 * p * (x2.im * ct * ct * sr + x3.im * ct * st) * cr / (p * ct * ct * cr * cr - q1);
    let mut xs = vec![x2, x3];
    xs.resize(n, c(0.0, 0.0));
    let mut ys = vec![y3];
    ys.resize(n - 1, c(0.0, 0.0));
    Ok(type_iv_v(PlaneType::IV, la / params.lambda1, &xs, beta, &ys, t, r))
}

/// The type (iv) plane of `E_{1,1,0}` at an arbitrary frame.
pub fn plane_110(t: f64, r: f64, params: &MetricParams, n: usize) -> Result<PlaneCandidate, GeomError> {
    if n < 2 {
        return Err(GeomError::DimensionTooSmall(n));
    }
    let (ct, st, cr, sr) = (libm::cos(t), libm::sin(t), libm::cos(r), libm::sin(r));
    if sr.abs() < 1e-9 {
        return Err(GeomError::DegenerateFrame("sin r = 0"));
    }
    if ct.abs() < 1e-9 {
        return Err(GeomError::DegenerateFrame("cos t = 0"));
    }
    let den = ct * ct * cr * cr - 1.0;
    if den.abs() < 1e-12 {
        return Err(GeomError::DegenerateFrame("cos^2 t cos^2 r = 1"));
    }
    let s = st / (ct * sr);
    let y3 = c(0.0, s);
    let beta = 1.0 - s * s;
    let x2 = c(1.0, 0.0);
    let x3 = -I * y3;
    let la = -2.0 * (x2.im * ct * ct * sr + x3.im * ct * st) * cr / den;
    let mut xs = vec![x2, x3];
    xs.resize(n, c(0.0, 0.0));
    let mut ys = vec![y3];
    ys.resize(n - 1, c(0.0, 0.0));
    Ok(type_iv_v(PlaneType::IV, la / params.lambda1, &xs, beta, &ys, t, r))
}

pub fn w0_plane_110(t: f64, r: f64, params: &MetricParams, n: usize) -> Result<ResidualReport, GeomError> {
    let cand = plane_110(t, r, params, n)?;
    kerin_residuals(&cand.frame(), &cand.x, &cand.y, &Triple::new(1, 1, 0), params)
}

fn check_sin_t(t: f64) -> Result<(f64, f64), GeomError> {
    let st = libm::sin(t);
    if st.abs() < 1e-9 {
        return Err(GeomError::DegenerateFrame("sin t = 0"));
    }
    Ok((libm::cos(t), st))
}

/// Type (i) plane for `E_{0,0,1}`: `x_23 = x_32 = -i sin r cot t`,
/// `x_33 = i((2 - cos^2 r) cos^2 t - 1)/sin^2 t`, `Y = diag(i, 0, ..)`.
pub fn type_i_plane_001(t: f64, r: f64, n: usize) -> Result<PlaneCandidate, GeomError> {
    let (ct, st) = check_sin_t(t)?;
    let (cr, sr) = (libm::cos(r), libm::sin(r));
    let mut x = CMatrix::zeros(n + 1);
    x[(1, 2)] = c(0.0, -sr * ct / st);
    x[(2, 1)] = c(0.0, -sr * ct / st);
    x[(2, 2)] = c(0.0, ((2.0 - cr * cr) * ct * ct - 1.0) / (st * st));
    let mut yd = vec![c(0.0, 0.0); n + 1];
    yd[0] = I;
    Ok(PlaneCandidate { kind: PlaneType::I, x, y: CMatrix::diag(&yd), alpha: 0.0, beta: 0.0, xs: Vec::new(), ys: Vec::new(), t, r })
}

/// Type (ii) plane for `E_{0,1,0}` as printed: `x_13 = x_31 = -i cos r cot t`,
/// `x_33 = -i`, `Y = diag(0, i, 0, ..)`.
pub fn type_ii_plane_010(t: f64, r: f64, n: usize) -> Result<PlaneCandidate, GeomError> {
    type_ii_with(t, r, n, |_, _| -1.0)
}

/// Type (ii) plane for `E_{0,1,0}` with `x_33` solved from the conjugated
/// dependence condition of the two-step metric:
/// `lambda1 x_33 = i((1 + cos^2 r) cos^2 t - 1)/sin^2 t`.
pub fn type_ii_plane_010_solved(t: f64, r: f64, params: &MetricParams, n: usize) -> Result<PlaneCandidate, GeomError> {
    let l = params.lambda1;
    type_ii_with(t, r, n, move |ct, cr| ((1.0 + cr * cr) * ct * ct - 1.0) / ((1.0 - ct * ct) * l))
}

fn type_ii_with(t: f64, r: f64, n: usize, x33: impl Fn(f64, f64) -> f64) -> Result<PlaneCandidate, GeomError> {
    let (ct, st) = check_sin_t(t)?;
    let cr = libm::cos(r);
    let mut x = CMatrix::zeros(n + 1);
    x[(0, 2)] = c(0.0, -cr * ct / st);
    x[(2, 0)] = c(0.0, -cr * ct / st);
    x[(2, 2)] = c(0.0, x33(ct, cr));
    let mut yd = vec![c(0.0, 0.0); n + 1];
    yd[1] = I;
    Ok(PlaneCandidate { kind: PlaneType::II, x, y: CMatrix::diag(&yd), alpha: 0.0, beta: 0.0, xs: Vec::new(), ys: Vec::new(), t, r })
}

/// Largest residual after moving a verified two-step plane to the one-step
/// metric (`X -> phi1 X`), and after moving that back (`X -> phi1^-1 X`).
pub fn metric_switch(cand: &PlaneCandidate, tri: &Triple, params: &MetricParams) -> Result<(f64, f64), GeomError> {
    let b = cand.frame();
    let xw = to_wilking(&cand.x, params);
    let w = wilking_residuals(&b, &xw, &cand.y, tri, params)?;
    let xk = to_kerin(&xw, params);
    let k = kerin_residuals(&b, &xk, &cand.y, tri, params)?;
    Ok((w.max_residual, k.max_residual))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridPoint {
    pub x: Rational,
    pub y: Rational,
    /// Exact sign of `f(x, y)`.
    pub f_sign: i8,
    pub constructed: bool,
    pub error: Option<GeomError>,
    pub kerin_max: Option<f64>,
    pub horizontality_max: Option<f64>,
    /// `(to one-step, back to two-step)` residual maxima.
    pub switch_max: Option<(f64, f64)>,
}

impl GridPoint {
    /// Construction succeeded exactly where `f >= 0`, with residuals within `tol`.
    pub fn consistent(&self, tol: f64) -> bool {
        if self.f_sign < 0 {
            return matches!(self.error, Some(GeomError::NegativeF(_)));
        }
        if let Some(GeomError::VanishingDenominator(_)) = self.error {
            return true;
        }
        self.constructed
            && self.kerin_max.is_some_and(|v| v <= tol)
            && self.horizontality_max.is_some_and(|v| v <= tol)
            && self.switch_max.is_some_and(|(a, b)| a <= tol && b <= tol)
    }
}

/// Runs the construction at `x = i/(grid+1)`, `y = j/(grid+1)`, `1 <= i, j <= grid`.
pub fn construct_grid(tri: &Triple, grid: u32, params: &MetricParams, n: usize) -> Vec<GridPoint> {
    let mut out = Vec::new();
    let den = grid as i64 + 1;
    let f = build_f(tri);
    for i in 1..=grid as i64 {
        for j in 1..=grid as i64 {
            let x = Rational::new(i.into(), den.into());
            let y = Rational::new(j.into(), den.into());
            out.push(grid_point(tri, &f, x, y, params, n));
        }
    }
    out
}

/// One grid sample: exact sign of `f`, then the construction and its residuals.
pub fn grid_point(
    tri: &Triple,
    f: &crate::exactpoly::BiPoly,
    x: Rational,
    y: Rational,
    params: &MetricParams,
    n: usize,
) -> GridPoint {
    let f_sign = sign(&f.eval(&x, &y));
    let mut gp = GridPoint {
        x: x.clone(),
        y: y.clone(),
        f_sign,
        constructed: false,
        error: None,
        kerin_max: None,
        horizontality_max: None,
        switch_max: None,
    };
    match construct_zero_plane(tri, &x, &y, params, n) {
        Ok(cand) => {
            gp.constructed = true;
            let b = cand.frame();
            match kerin_residuals(&b, &cand.x, &cand.y, tri, params) {
                Ok(rep) => gp.kerin_max = Some(rep.max_residual),
                Err(e) => gp.error = Some(e),
            }
            let (h1, h2) = horizontality_scalars(cand.t, cand.r, tri, &cand, params);
            gp.horizontality_max = Some(h1.abs().max(h2.abs()));
            gp.switch_max = metric_switch(&cand, tri, params).ok();
        }
        Err(e) => gp.error = Some(e),
    }
    gp
}

#[derive(Clone, Debug, PartialEq)]
pub struct A0Report {
    /// Largest deviation of the solved unknowns from the printed solution
    /// vector over the sampled `y3`.
    pub solution_error: f64,
    /// Size of the coefficients odd in `Re(y3)` in the quadratic constraint.
    pub odd_part: f64,
    /// `[c2, c1, c0]` of the constraint in `Im(y3)`.
    pub quadratic: [f64; 3],
    pub im_candidates: [f64; 2],
    pub re_squared: [f64; 2],
    /// Both candidates force `Re(y3)^2 < 0`.
    pub contradiction: bool,
}

const UNKNOWNS: usize = 6;

/// The four printed equations at `A(3 pi/4, pi/4)`, as `LHS - RHS`, with
/// unknowns `u = (lambda1 alpha, beta, Re x2, Im x2, Re x3, Im x3)`.
fn a0_equations(u: &[f64; UNKNOWNS], y3: C64) -> [C64; 4] {
    let s2 = core::f64::consts::SQRT_2;
    let (la, beta) = (u[0], u[1]);
    let x2 = c(u[2], u[3]);
    let x3 = c(u[4], u[5]);
    let last1 = c(s2 * y3.im - 0.5 * beta - 0.5, 0.0);
    let last2 = c(-0.5 * la - s2 * x3.im - x2.im, 0.0);
    let last3 = (-I * (s2 / 4.0 * beta) + I * (s2 / 4.0) + y3.conj() * 0.5)
        - (I * (s2 / 4.0 * la) + c(s2 / 2.0 * x2.re, 0.0) + x3.conj() * 0.5);
    let last4 = (c(-s2 / 2.0 * y3.re, 0.0) + I * (beta / 4.0) + I * 0.25)
        - (I * (la / 4.0) + c(s2 / 2.0 * x3.re, 0.0) - I * (0.5 * x2.im));
    [last1, last2, last3, last4]
}

fn a0_real_rows(u: &[f64; UNKNOWNS], y3: C64) -> [f64; UNKNOWNS] {
    let e = a0_equations(u, y3);
    [e[0].re, e[1].re, e[2].re, e[2].im, e[3].re, e[3].im]
}

/// Solves the six real equations for the unknowns given `y3`.
pub fn a0_solve(y3: C64) -> Option<[f64; UNKNOWNS]> {
    let zero = [0.0; UNKNOWNS];
    let b0 = a0_real_rows(&zero, y3);
    let mut a = vec![vec![0.0; UNKNOWNS]; UNKNOWNS];
    for k in 0..UNKNOWNS {
        let mut e = zero;
        e[k] = 1.0;
        let col = a0_real_rows(&e, y3);
        for i in 0..UNKNOWNS {
            a[i][k] = col[i] - b0[i];
        }
    }
    let rhs: Vec<f64> = b0.iter().map(|v| -v).collect();
    let sol = solve_real(&a, &rhs)?;
    let mut out = [0.0; UNKNOWNS];
    out.copy_from_slice(&sol);
    Some(out)
}

pub fn a0_printed_solution(y3: C64) -> [f64; UNKNOWNS] {
    let s2 = core::f64::consts::SQRT_2;
    let (a, b) = (y3.re, y3.im);
    [1.0 - s2 * b, -1.0 + 2.0 * s2 * b, s2 * a, 0.5 - 1.5 * s2 * b, -a, -s2 / 2.0 + 2.0 * b]
}

/// Imaginary part of `x3 + i x2 y3`, which must vanish.
fn a0_constraint(y3: C64) -> f64 {
    let u = a0_solve(y3).expect("A0 system is regular");
    let x2 = c(u[2], u[3]);
    let x3 = c(u[4], u[5]);
    (x3 + I * x2 * y3).im
}

pub fn quasipositive_a0_check() -> A0Report {
    let samples = [c(0.0, 0.0), c(0.3, -0.7), c(-1.2, 0.4), c(2.0, 1.5), c(0.5, 3.0)];
    let mut solution_error = 0.0f64;
    for y3 in samples {
        let u = a0_solve(y3).expect("A0 system is regular");
        let pr = a0_printed_solution(y3);
        for k in 0..UNKNOWNS {
            solution_error = solution_error.max((u[k] - pr[k]).abs());
        }
    }
    // The constraint is quadratic in (a, b) = (Re y3, Im y3); read off its
    // coefficients from exact-degree samples.
    let e = |a: f64, b: f64| a0_constraint(c(a, b));
    let c0 = e(0.0, 0.0);
    let (ep, em) = (e(1.0, 0.0), e(-1.0, 0.0));
    let ca = 0.5 * (ep - em);
    let caa = 0.5 * (ep + em) - c0;
    let (fp, fm) = (e(0.0, 1.0), e(0.0, -1.0));
    let cb = 0.5 * (fp - fm);
    let cbb = 0.5 * (fp + fm) - c0;
    let cab = e(1.0, 1.0) - c0 - ca - caa - cb - cbb;
    let odd_part = ca.abs().max(cab.abs());
    // beta is affine in b.
    let beta0 = a0_solve(c(0.0, 0.0)).unwrap()[1];
    let beta1 = a0_solve(c(0.0, 1.0)).unwrap()[1] - beta0;
    // Substitute a^2 = 1 - beta - b^2.
    let q2 = cbb - caa;
    let q1 = cb - caa * beta1;
    let q0 = c0 + caa * (1.0 - beta0);
    let disc = q1 * q1 - 4.0 * q2 * q0;
    let sq = libm::sqrt(disc.max(0.0));
    let mut roots = [(-q1 - sq) / (2.0 * q2), (-q1 + sq) / (2.0 * q2)];
    if roots[0] > roots[1] {
        roots.swap(0, 1);
    }
    let re_sq = roots.map(|b| 1.0 - (beta0 + beta1 * b) - b * b);
    A0Report {
        solution_error,
        odd_part,
        quadratic: [q2, q1, q0],
        im_candidates: roots,
        re_squared: re_sq,
        contradiction: disc >= 0.0 && re_sq.iter().all(|v| *v < 0.0),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmallDet {
    /// Determinant of the assembled coefficient matrix.
    pub assembled: f64,
    /// `(p - 2 q1) cos^2 r cos^3 t + q1 cos^3 t` as printed.
    pub printed: f64,
    /// `cos r cos t ((p - 2 q1) cos^2 r cos^2 t + q1)`, the expansion of the
    /// assembled determinant.
    pub expanded: f64,
}

/// Coefficient matrix of the homogeneous system in
/// `(lambda1 alpha, Im x2, Im x3)` given by `Im V_1 = 0`, `Im V_2 = 0` and
/// the `X` horizontality equation, with `Re x2 = Re x3 = 0`.
/// The `V` rows are read off `Ad_{B^-1}(phi1 X)` directly.
pub fn small_det_check(t: f64, r: f64, tri: &Triple) -> SmallDet {
    let params = MetricParams::default();
    let b = frame_point(t, r, 2);
    let mut m = [[0.0; 3]; 3];
    for k in 0..3 {
        let mut unit = [0.0; 3];
        unit[k] = 1.0;
        let xs = [c(0.0, unit[1]), c(0.0, unit[2])];
        let cand = type_iv_v(PlaneType::IV, unit[0] / params.lambda1, &xs, 0.0, &[c(0.0, 0.0)], t, r);
        let v = phi1(&cand.x, &params).conjugate_by_inverse(&b).column_tail(0, 1);
        let (h, _) = horizontality_scalars(t, r, tri, &cand, &params);
        m[0][k] = v[0].im;
        m[1][k] = v[1].im;
        m[2][k] = h;
    }
    let (p, q1) = (f64_of(&tri.p), f64_of(&tri.q1));
    let (ct, cr) = (libm::cos(t), libm::cos(r));
    SmallDet {
        assembled: det3(&m),
        printed: (p - 2.0 * q1) * cr * cr * ct * ct * ct + q1 * ct * ct * ct,
        expanded: cr * ct * ((p - 2.0 * q1) * cr * cr * ct * ct + q1),
    }
}
