//! Floating-point checks of zero-curvature planes on `u(n+1)`.
//!
//! Conventions: `<X, Y>_0 = -Re Tr(XY)`; `k` is the `(0,0)` entry plus the
//! lower-right `n x n` block and `p` the rest of the first row and column;
//! `h` is the `(0,0)` and `(1,1)` entries plus the lower-right `(n-1)` block.

pub mod matrix;
pub mod planes;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::ToPrimitive;

use crate::eschenburg::Triple;
use crate::exactpoly::Rational;

pub use matrix::{c, wedge_norm, CMatrix, C64, I};
pub use planes::*;

pub const SKEW_TOL: f64 = 1e-12;
pub const UNITARY_TOL: f64 = 1e-10;
pub const RANK_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum GeomError {
    NotSkewHermitian { residual: f64 },
    /// Second singular value of `span{X, Y}` below `1e-6` of the first.
    RankDeficient { ratio: f64 },
    DimensionTooSmall(usize),
    InvalidLambda(f64),
    DegenerateFrame(&'static str),
    Excluded(Triple),
    Inadmissible(Triple),
    OutsideOpenSquare,
    /// `f(x, y) < 0`, so no plane of this family exists at the point.
    NegativeF(Rational),
    VanishingDenominator(&'static str),
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::NotSkewHermitian { residual } => write!(f, "matrix is not skew-Hermitian (||X + X*|| = {:e})", residual),
            GeomError::RankDeficient { ratio } => write!(f, "X and Y are linearly dependent (singular value ratio {:e})", ratio),
            GeomError::DimensionTooSmall(n) => write!(f, "n = {} but n >= 2 is required", n),
            GeomError::InvalidLambda(l) => write!(f, "lambda = {} is outside (0, 1)", l),
            GeomError::DegenerateFrame(why) => write!(f, "degenerate frame: {}", why),
            GeomError::Excluded(t) => write!(f, "triple {} is excluded from the construction", t),
            GeomError::Inadmissible(t) => write!(f, "triple {} is not admissible", t),
            GeomError::OutsideOpenSquare => f.write_str("(x, y) must lie in the open unit square"),
            GeomError::NegativeF(v) => write!(f, "f(x, y) = {} < 0, no plane exists", v),
            GeomError::VanishingDenominator(which) => write!(f, "denominator {} vanishes at this point", which),
        }
    }
}

impl core::error::Error for GeomError {}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricParams {
    pub lambda1: f64,
    pub lambda2: f64,
}

impl MetricParams {
    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self, GeomError> {
        for l in [lambda1, lambda2] {
            if !(l > 0.0 && l < 1.0) {
                return Err(GeomError::InvalidLambda(l));
            }
        }
        Ok(MetricParams { lambda1, lambda2 })
    }

    /// `lambda_i = t_i / (t_i + 1)`.
    pub fn from_t(t1: f64, t2: f64) -> Result<Self, GeomError> {
        Self::new(t1 / (t1 + 1.0), t2 / (t2 + 1.0))
    }

    /// Identity-like maps, used to probe the `lambda = 1` limit.
    pub fn unchecked(lambda1: f64, lambda2: f64) -> Self {
        MetricParams { lambda1, lambda2 }
    }
}

impl Default for MetricParams {
    fn default() -> Self {
        MetricParams { lambda1: 0.4, lambda2: 0.7 }
    }
}

/// `diag(A(t, r), I_{n-2})` with `A` the rotation whose first column is
/// `(cos t cos r, cos t sin r, sin t)`.
pub fn frame_point(t: f64, r: f64, n: usize) -> CMatrix {
    assert!(n >= 2, "frame_point needs n >= 2");
    let (ct, st, cr, sr) = (libm::cos(t), libm::sin(t), libm::cos(r), libm::sin(r));
    let re = |v: f64| c(v, 0.0);
    let a = CMatrix::from_rows(&[
        alloc::vec![re(ct * cr), re(-sr), re(-st * cr)],
        alloc::vec![re(ct * sr), re(cr), re(-st * sr)],
        alloc::vec![re(st), re(0.0), re(ct)],
    ]);
    a.pad_identity(n + 1)
}

fn check_skew(x: &CMatrix) -> Result<(), GeomError> {
    let res = x.skew_residual();
    if res > SKEW_TOL * (1.0 + x.norm()) {
        Err(GeomError::NotSkewHermitian { residual: res })
    } else {
        Ok(())
    }
}

fn k_part(x: &CMatrix) -> CMatrix {
    let mut k = x.clone();
    for j in 1..x.dim() {
        k[(0, j)] = c(0.0, 0.0);
        k[(j, 0)] = c(0.0, 0.0);
    }
    k
}

fn h_part(x: &CMatrix) -> CMatrix {
    let mut h = CMatrix::zeros(x.dim());
    h[(0, 0)] = x[(0, 0)];
    h[(1, 1)] = x[(1, 1)];
    for i in 2..x.dim() {
        for j in 2..x.dim() {
            h[(i, j)] = x[(i, j)];
        }
    }
    h
}

pub fn split_kp(x: &CMatrix) -> Result<(CMatrix, CMatrix), GeomError> {
    check_skew(x)?;
    let k = k_part(x);
    let p = x - &k;
    Ok((k, p))
}

pub fn split_hm(x: &CMatrix) -> Result<(CMatrix, CMatrix), GeomError> {
    check_skew(x)?;
    let h = h_part(x);
    let m = x - &h;
    Ok((h, m))
}

pub fn inner0(a: &CMatrix, b: &CMatrix) -> f64 {
    -(a * b).trace().re
}

fn phi_with(x: &CMatrix, lambda: f64) -> CMatrix {
    let k = k_part(x);
    &k.scale(lambda) + &(x - &k)
}

/// `lambda1 X_k + X_p`.
pub fn phi1(x: &CMatrix, params: &MetricParams) -> CMatrix {
    phi_with(x, params.lambda1)
}

pub fn phi1_inv(x: &CMatrix, params: &MetricParams) -> CMatrix {
    phi_with(x, 1.0 / params.lambda1)
}

/// `lambda2 X_h + X_m`.
pub fn psi(x: &CMatrix, params: &MetricParams) -> CMatrix {
    let h = h_part(x);
    &h.scale(params.lambda2) + &(x - &h)
}

pub fn psi_inv(x: &CMatrix, params: &MetricParams) -> CMatrix {
    let h = h_part(x);
    &h.scale(1.0 / params.lambda2) + &(x - &h)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub entries: Vec<(&'static str, f64)>,
    pub max_residual: f64,
}

impl ResidualReport {
    pub fn new(entries: Vec<(&'static str, f64)>) -> Self {
        let max_residual = entries.iter().fold(0.0f64, |m, e| m.max(e.1));
        ResidualReport { entries, max_residual }
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|e| e.0 == name).map(|e| e.1)
    }

    pub fn max_excluding(&self, names: &[&str]) -> f64 {
        self.entries.iter().filter(|e| !names.contains(&e.0)).fold(0.0f64, |m, e| m.max(e.1))
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push_str(&alloc::format!("{}={:.2e}", k, v));
        }
        s
    }
}

pub const HORIZ_CIRCLE_X: &str = "horiz_circle_x";
pub const HORIZ_CIRCLE_Y: &str = "horiz_circle_y";
pub const HORIZ_BLOCK_X: &str = "horiz_u(n-1)_x";
pub const HORIZ_BLOCK_Y: &str = "horiz_u(n-1)_y";
pub const BRACKET: &str = "bracket";
pub const DEP_P: &str = "dep_p";
pub const DEP_P_ADB: &str = "dep_p_adb";
pub const BRACKET_M: &str = "bracket_m";
pub const BRACKET_H: &str = "bracket_h";

/// Ratio of the singular values of the real 2-frame `(X, Y)`.
pub fn rank_ratio(x: &CMatrix, y: &CMatrix) -> f64 {
    let a = x.real_dot(x);
    let b = x.real_dot(y);
    let d = y.real_dot(y);
    let tr = a + d;
    let disc = libm::sqrt((a - d) * (a - d) + 4.0 * b * b);
    let hi = 0.5 * (tr + disc);
    let lo = (0.5 * (tr - disc)).max(0.0);
    if hi <= 0.0 {
        0.0
    } else {
        libm::sqrt(lo / hi)
    }
}

/// `Ad_B(i diag(p, 0, ..)) - i diag(q1, q2, 0, ..)`, the circle part of `l`.
pub fn circle_generator(b: &CMatrix, t: &Triple) -> CMatrix {
    let dim = b.dim();
    let f = |v: &num_bigint::BigInt| v.to_f64().unwrap_or(f64::NAN);
    let mut l1 = CMatrix::zeros(dim);
    l1[(0, 0)] = c(0.0, f(&t.p));
    let mut l2 = CMatrix::zeros(dim);
    l2[(0, 0)] = c(0.0, f(&t.q1));
    l2[(1, 1)] = c(0.0, f(&t.q2));
    &l1.conjugate_by(b) - &l2
}

fn rel(v: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        v / scale
    } else {
        v
    }
}

fn preconditions(b: &CMatrix, x: &CMatrix, y: &CMatrix) -> Result<(), GeomError> {
    if b.dim() < 3 {
        return Err(GeomError::DimensionTooSmall(b.dim().saturating_sub(1)));
    }
    let ures = b.unitary_residual();
    if ures > UNITARY_TOL {
        return Err(GeomError::DegenerateFrame("B is not unitary"));
    }
    check_skew(x)?;
    check_skew(y)?;
    let ratio = rank_ratio(x, y);
    if ratio < RANK_TOL {
        return Err(GeomError::RankDeficient { ratio });
    }
    Ok(())
}

/// Horizontality, bracket and the two dependence conditions, with `(wx, wy)`
/// the vectors paired against `l` and conjugated by `B^-1`.
fn common_residuals(
    b: &CMatrix,
    x: &CMatrix,
    y: &CMatrix,
    wx: &CMatrix,
    wy: &CMatrix,
    t: &Triple,
) -> Vec<(&'static str, f64)> {
    let z = circle_generator(b, t);
    let zn = z.norm();
    let sxy = x.norm() * y.norm();
    let swy = wx.norm() * wy.norm();
    let adx = wx.conjugate_by_inverse(b);
    let ady = wy.conjugate_by_inverse(b);
    alloc::vec![
        (HORIZ_CIRCLE_X, rel(inner0(wx, &z).abs(), wx.norm() * zn)),
        (HORIZ_CIRCLE_Y, rel(inner0(wy, &z).abs(), wy.norm() * zn)),
        (HORIZ_BLOCK_X, rel(wx.block_norm(2), wx.norm())),
        (HORIZ_BLOCK_Y, rel(wy.block_norm(2), wy.norm())),
        (BRACKET, rel(x.commutator(y).norm(), sxy)),
        (DEP_P, rel(wedge_norm(&x.column_tail(0, 1), &y.column_tail(0, 1)), sxy)),
        (DEP_P_ADB, rel(wedge_norm(&adx.column_tail(0, 1), &ady.column_tail(0, 1)), swy)),
    ]
}

/// Residuals of the four zero-curvature conditions for the one-step
/// deformation. All entries are scale-free: each is divided by the norms of
/// the matrices it is built from.
pub fn wilking_residuals(
    b: &CMatrix,
    x: &CMatrix,
    y: &CMatrix,
    t: &Triple,
    _params: &MetricParams,
) -> Result<ResidualReport, GeomError> {
    preconditions(b, x, y)?;
    Ok(ResidualReport::new(common_residuals(b, x, y, x, y, t)))
}

/// Residuals of the five conditions for the two-step deformation. The
/// `m` bracket is taken on the part of `m` inside `k`.
pub fn kerin_residuals(
    b: &CMatrix,
    x: &CMatrix,
    y: &CMatrix,
    t: &Triple,
    params: &MetricParams,
) -> Result<ResidualReport, GeomError> {
    preconditions(b, x, y)?;
    let wx = phi1(x, params);
    let wy = phi1(y, params);
    let mut e = common_residuals(b, x, y, &wx, &wy, t);
    let (xh, yh) = (h_part(x), h_part(y));
    let xm = &k_part(x) - &xh;
    let ym = &k_part(y) - &yh;
    let sxy = x.norm() * y.norm();
    e.push((BRACKET_M, rel(xm.commutator(&ym).norm(), sxy)));
    e.push((BRACKET_H, rel(xh.commutator(&yh).norm(), sxy)));
    Ok(ResidualReport::new(e))
}

/// Moves a plane between the two metrics: `X -> phi1(X)` towards the
/// one-step metric, `Y` unchanged.
pub fn to_wilking(x: &CMatrix, params: &MetricParams) -> CMatrix {
    phi1(x, params)
}

pub fn to_kerin(x: &CMatrix, params: &MetricParams) -> CMatrix {
    phi1_inv(x, params)
}
