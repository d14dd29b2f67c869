//! Tensor-product Bernstein form on a rational box, with de Casteljau splitting.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::bi::BiPoly;
use super::rational::{half, int, Rational};

/// Closed axis-parallel box `[x_lo, x_hi] x [y_lo, y_hi]` with rational corners.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatBox {
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub y_lo: Rational,
    pub y_hi: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmptyBoxError;

impl core::fmt::Display for EmptyBoxError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("box needs x_lo < x_hi and y_lo < y_hi")
    }
}

impl core::error::Error for EmptyBoxError {}

impl RatBox {
    pub fn new(x_lo: Rational, x_hi: Rational, y_lo: Rational, y_hi: Rational) -> Result<Self, EmptyBoxError> {
        if x_lo < x_hi && y_lo < y_hi {
            Ok(RatBox { x_lo, x_hi, y_lo, y_hi })
        } else {
            Err(EmptyBoxError)
        }
    }

    pub fn unit() -> Self {
        RatBox { x_lo: Rational::zero(), x_hi: Rational::one(), y_lo: Rational::zero(), y_hi: Rational::one() }
    }

    pub fn width(&self) -> Rational {
        &self.x_hi - &self.x_lo
    }

    pub fn height(&self) -> Rational {
        &self.y_hi - &self.y_lo
    }

    pub fn center(&self) -> (Rational, Rational) {
        (half(&self.x_lo, &self.x_hi), half(&self.y_lo, &self.y_hi))
    }

    /// Corners in the order (lo,lo), (hi,lo), (lo,hi), (hi,hi).
    pub fn corners(&self) -> [(Rational, Rational); 4] {
        [
            (self.x_lo.clone(), self.y_lo.clone()),
            (self.x_hi.clone(), self.y_lo.clone()),
            (self.x_lo.clone(), self.y_hi.clone()),
            (self.x_hi.clone(), self.y_hi.clone()),
        ]
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        &self.x_lo <= x && x <= &self.x_hi && &self.y_lo <= y && y <= &self.y_hi
    }

    pub fn contains_box(&self, o: &RatBox) -> bool {
        self.x_lo <= o.x_lo && o.x_hi <= self.x_hi && self.y_lo <= o.y_lo && o.y_hi <= self.y_hi
    }

    pub fn split_x(&self) -> (RatBox, RatBox) {
        let m = half(&self.x_lo, &self.x_hi);
        (
            RatBox { x_hi: m.clone(), ..self.clone() },
            RatBox { x_lo: m, ..self.clone() },
        )
    }

    pub fn split_y(&self) -> (RatBox, RatBox) {
        let m = half(&self.y_lo, &self.y_hi);
        (
            RatBox { y_hi: m.clone(), ..self.clone() },
            RatBox { y_lo: m, ..self.clone() },
        )
    }
}

/// Bernstein coefficients of a polynomial over a box; `coeffs[k][l]` pairs
/// with `B_k(u) B_l(v)` in the local coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernsteinPatch {
    pub bx: RatBox,
    pub coeffs: Vec<Vec<Rational>>,
}

fn binomials(n: usize) -> Vec<Rational> {
    let mut row = vec![Rational::one(); n + 1];
    for k in 1..=n {
        row[k] = &row[k - 1] * int((n + 1 - k) as i64) / int(k as i64);
    }
    row
}

impl BernsteinPatch {
    /// Degree `(n, m)` elevated form; `n`, `m` must be at least the polynomial's degrees.
    pub fn with_degree(f: &BiPoly, bx: &RatBox, n: usize, m: usize) -> Self {
        let g = f.affine(&bx.x_lo, &bx.width(), &bx.y_lo, &bx.height());
        let cn = binomials(n);
        let cm = binomials(m);
        // First convert along x for each power of y, then along y.
        let mut a = vec![vec![Rational::zero(); m + 1]; n + 1];
        for (i, j, c) in g.terms() {
            a[i as usize][j as usize] = c.clone();
        }
        let mut tmp = vec![vec![Rational::zero(); m + 1]; n + 1];
        for k in 0..=n {
            let ck = binomials(k);
            for i in 0..=k {
                let w = &ck[i] / &cn[i];
                for j in 0..=m {
                    if !a[i][j].is_zero() {
                        tmp[k][j] += &w * &a[i][j];
                    }
                }
            }
        }
        let mut b = vec![vec![Rational::zero(); m + 1]; n + 1];
        for l in 0..=m {
            let cl = binomials(l);
            for j in 0..=l {
                let w = &cl[j] / &cm[j];
                for k in 0..=n {
                    if !tmp[k][j].is_zero() {
                        b[k][l] += &w * &tmp[k][j];
                    }
                }
            }
        }
        BernsteinPatch { bx: bx.clone(), coeffs: b }
    }

    pub fn new(f: &BiPoly, bx: &RatBox) -> Self {
        let n = f.deg_x().unwrap_or(0) as usize;
        let m = f.deg_y().unwrap_or(0) as usize;
        BernsteinPatch::with_degree(f, bx, n, m)
    }

    pub fn min(&self) -> Rational {
        self.coeffs.iter().flatten().min().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn max(&self) -> Rational {
        self.coeffs.iter().flatten().max().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn all_nonpositive(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c <= &Rational::zero())
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c >= &Rational::zero())
    }

    pub fn split_x(&self) -> (BernsteinPatch, BernsteinPatch) {
        let n = self.coeffs.len() - 1;
        let m = self.coeffs[0].len() - 1;
        let mut left = vec![vec![Rational::zero(); m + 1]; n + 1];
        let mut right = left.clone();
        for l in 0..=m {
            let col: Vec<Rational> = (0..=n).map(|k| self.coeffs[k][l].clone()).collect();
            let (a, b) = casteljau_half(&col);
            for k in 0..=n {
                left[k][l] = a[k].clone();
                right[k][l] = b[k].clone();
            }
        }
        let (bl, br) = self.bx.split_x();
        (BernsteinPatch { bx: bl, coeffs: left }, BernsteinPatch { bx: br, coeffs: right })
    }

    pub fn split_y(&self) -> (BernsteinPatch, BernsteinPatch) {
        let mut left = Vec::with_capacity(self.coeffs.len());
        let mut right = Vec::with_capacity(self.coeffs.len());
        for row in &self.coeffs {
            let (a, b) = casteljau_half(row);
            left.push(a);
            right.push(b);
        }
        let (bl, br) = self.bx.split_y();
        (BernsteinPatch { bx: bl, coeffs: left }, BernsteinPatch { bx: br, coeffs: right })
    }
}

/// de Casteljau at `t = 1/2`: control points of the two halves.
pub fn casteljau_half(c: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let n = c.len();
    let mut work = c.to_vec();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    left.push(work[0].clone());
    right.push(work[n - 1].clone());
    for level in 1..n {
        for k in 0..n - level {
            work[k] = half(&work[k], &work[k + 1]);
        }
        left.push(work[0].clone());
        right.push(work[n - 1 - level].clone());
    }
    right.reverse();
    (left, right)
}

/// Tensor Bernstein coefficients of `f` on `bx` as a plain matrix.
pub fn bernstein_coeffs(f: &BiPoly, bx: &RatBox) -> Vec<Vec<Rational>> {
    BernsteinPatch::new(f, bx).coeffs
}
