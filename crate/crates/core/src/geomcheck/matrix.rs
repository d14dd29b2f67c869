use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

pub type C64 = Complex64;

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Dense square complex matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix { dim, data: vec![C64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn diag(entries: &[C64]) -> Self {
        let mut m = Self::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = *e;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix must be square");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn scale(&self, s: f64) -> Self {
        CMatrix { dim: self.dim, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn scale_c(&self, s: C64) -> Self {
        CMatrix { dim: self.dim, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|v| v.norm_sqr()).sum::<f64>())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `Ad_B(X) = B X B^-1` for unitary `B`.
    pub fn conjugate_by(&self, b: &Self) -> Self {
        &(b * self) * &b.adjoint()
    }

    /// `Ad_{B^-1}(X) = B^-1 X B` for unitary `B`.
    pub fn conjugate_by_inverse(&self, b: &Self) -> Self {
        &(&b.adjoint() * self) * b
    }

    /// `||X + X*||`.
    pub fn skew_residual(&self) -> f64 {
        (self + &self.adjoint()).norm()
    }

    /// `||B* B - I||`.
    pub fn unitary_residual(&self) -> f64 {
        (&(&self.adjoint() * self) - &Self::identity(self.dim)).norm()
    }

    /// Real part of the Frobenius product `Re Tr(A* B)`.
    pub fn real_dot(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a.conj() * b).re).sum()
    }

    /// Top-left embedding into a larger matrix, zeros elsewhere.
    pub fn pad(&self, dim: usize) -> Self {
        assert!(dim >= self.dim);
        let mut m = Self::zeros(dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self[(i, j)];
            }
        }
        m
    }

    /// Same as `pad` but with identity on the new diagonal, for group elements.
    pub fn pad_identity(&self, dim: usize) -> Self {
        let mut m = self.pad(dim);
        for i in self.dim..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Entries `(from.., col)`.
    pub fn column_tail(&self, col: usize, from: usize) -> Vec<C64> {
        (from..self.dim).map(|i| self[(i, col)]).collect()
    }

    /// Entries `(row, j)` for `j != row`.
    pub fn row_offdiag(&self, row: usize) -> Vec<C64> {
        (0..self.dim).filter(|&j| j != row).map(|j| self[(row, j)]).collect()
    }

    /// Frobenius norm of the block `[from.., from..]`.
    pub fn block_norm(&self, from: usize) -> f64 {
        let mut s = 0.0;
        for i in from..self.dim {
            for j in from..self.dim {
                s += self[(i, j)].norm_sqr();
            }
        }
        libm::sqrt(s)
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, o: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, o.dim);
        CMatrix { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, o: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, o.dim);
        CMatrix { dim: self.dim, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        self.scale(-1.0)
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, o: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, o.dim);
        let n = self.dim;
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    m.data[i * n + j] += a * o.data[k * n + j];
                }
            }
        }
        m
    }
}

/// Norm of all 2x2 minors of the real vectors obtained by stacking real and
/// imaginary parts. Zero exactly when `u`, `v` are dependent over the reals.
pub fn wedge_norm(u: &[C64], v: &[C64]) -> f64 {
    let a: Vec<f64> = u.iter().map(|z| z.re).chain(u.iter().map(|z| z.im)).collect();
    let b: Vec<f64> = v.iter().map(|z| z.re).chain(v.iter().map(|z| z.im)).collect();
    let mut s = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            let m = a[i] * b[j] - a[j] * b[i];
            s += m * m;
        }
    }
    libm::sqrt(s)
}

/// Solves a dense real system by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot falls below `1e-14` times the largest entry.
pub fn solve_real(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.iter().zip(b).map(|(row, &bi)| {
        let mut r = row.clone();
        r.push(bi);
        r
    }).collect();
    let scale = a.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs()));
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())?;
        if m[piv][col].abs() <= 1e-14 * scale {
            return None;
        }
        m.swap(col, piv);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for k in col..=n {
                m[row][k] -= f * m[col][k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|k| m[i][k] * x[k]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    Some(x)
}

pub fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}
