//! Elimination of y: Sylvester resultants, subresultant coefficients and
//! gcds in Q[x][y].

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::bi::BiPoly;
use super::rational::Rational;
use super::uni::UniPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroPolynomialError;

impl core::fmt::Display for ZeroPolynomialError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("resultant of the zero polynomial is undefined")
    }
}

impl core::error::Error for ZeroPolynomialError {}

/// Determinant over Q[x] by fraction-free (Bareiss) elimination.
pub fn det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::one();
    }
    let mut negate = false;
    let mut prev = UniPoly::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return UniPoly::zero();
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Rows of the Sylvester-type matrix used for the `k`-th subresultant;
/// columns run from the highest power of y down to zero.
fn sylvester_rows(a: &[UniPoly], b: &[UniPoly], k: usize) -> Vec<Vec<UniPoly>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let width = m + n - k;
    let mut rows = Vec::new();
    for (p, count) in [(a, n - k), (b, m - k)] {
        for s in (0..count).rev() {
            // Row for y^s * p: coefficient of y^e sits at column width-1-e.
            let mut row = vec![UniPoly::zero(); width];
            for (e, c) in p.iter().enumerate() {
                let pow = e + s;
                if pow < width {
                    row[width - 1 - pow] = c.clone();
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// Coefficients (in y, lowest first) of the `k`-th subresultant of `a` and
/// `b` viewed as polynomials in y. Requires `k < min(deg a, deg b)` unless `k = 0`.
pub fn subresultant_y(a: &BiPoly, b: &BiPoly, k: usize) -> Vec<UniPoly> {
    let ac = a.y_coeffs();
    let bc = b.y_coeffs();
    let m = ac.len() - 1;
    let n = bc.len() - 1;
    assert!(k <= m.min(n), "subresultant index too large");
    let rows = sylvester_rows(&ac, &bc, k);
    let width = m + n - k;
    let lead_cols = m + n - 2 * k - 1;
    let mut out = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let col_i = width - 1 - i;
        let mat: Vec<Vec<UniPoly>> = rows
            .iter()
            .map(|r| {
                let mut v: Vec<UniPoly> = r[..lead_cols].to_vec();
                v.push(r[col_i].clone());
                v
            })
            .collect();
        out.push(det(mat));
    }
    out
}

/// Resultant of `a` and `b` with respect to y.
pub fn resultant_y(a: &BiPoly, b: &BiPoly) -> Result<UniPoly, ZeroPolynomialError> {
    if a.is_zero() || b.is_zero() {
        return Err(ZeroPolynomialError);
    }
    let ac = a.y_coeffs();
    let bc = b.y_coeffs();
    let (m, n) = (ac.len() - 1, bc.len() - 1);
    if m == 0 && n == 0 {
        return Ok(UniPoly::one());
    }
    let rows = sylvester_rows(&ac, &bc, 0);
    debug_assert_eq!(rows.len(), m + n);
    Ok(det(rows))
}

type YPoly = Vec<UniPoly>;

fn trim(mut p: YPoly) -> YPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Monic gcd of the x-polynomial coefficients.
pub fn content_y(p: &BiPoly) -> UniPoly {
    content(&p.y_coeffs())
}

fn content(p: &[UniPoly]) -> UniPoly {
    let mut g = UniPoly::zero();
    for c in p {
        g = g.gcd(c);
        if g.degree() == Some(0) {
            break;
        }
    }
    g
}

fn primitive(p: &[UniPoly]) -> YPoly {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    p.iter().map(|q| q.div_exact(&c).expect("content divides")).collect()
}

/// Primitive part with respect to y (x-content removed).
pub fn primitive_y(p: &BiPoly) -> BiPoly {
    BiPoly::from_y_coeffs(&primitive(&p.y_coeffs()))
}

fn prem(a: &[UniPoly], b: &[UniPoly]) -> YPoly {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r: YPoly = a.to_vec();
    if r.len() <= db {
        return r;
    }
    let mut e = r.len() - db;
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let t = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&t * bc);
        }
        r = trim(r);
        e -= 1;
    }
    for _ in 0..e {
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
    }
    r
}

/// Greatest common divisor in Q[x, y] (up to a rational constant), via a
/// primitive remainder sequence in y.
pub fn gcd_xy(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let (ac, bc) = (a.y_coeffs(), b.y_coeffs());
    let c = content(&ac).gcd(&content(&bc));
    let (mut p, mut q) = (primitive(&ac), primitive(&bc));
    if p.len() < q.len() {
        core::mem::swap(&mut p, &mut q);
    }
    while !q.is_empty() {
        let r = trim(prem(&p, &q));
        p = q;
        q = if r.is_empty() { r } else { primitive(&r) };
    }
    let g = if p.len() <= 1 { BiPoly::constant(Rational::one()) } else { BiPoly::from_y_coeffs(&p) };
    normalize(&(&g * &BiPoly::from_x_poly(&c)))
}

/// Scales to integer coefficients with gcd one and positive leading term.
pub fn normalize(p: &BiPoly) -> BiPoly {
    if p.is_zero() {
        return BiPoly::zero();
    }
    let flat: Vec<Rational> = p.terms().map(|(_, _, c)| c.clone()).collect();
    // Reuse the univariate primitive-part logic on the coefficient list.
    let u = UniPoly::new(flat.clone());
    let pu = u.primitive();
    let k = if pu.is_zero() { Rational::one() } else { &pu.lc() / &u.lc() };
    let lead_sign_fix = {
        let (_, _, c) = p.terms().max_by_key(|(i, j, _)| (*j, *i)).unwrap();
        if (c * &k) < Rational::zero() {
            -Rational::one()
        } else {
            Rational::one()
        }
    };
    p.scale(&(k * lead_sign_fix))
}

/// Squarefree part of the y-primitive part (x-content dropped).
pub fn squarefree_y(p: &BiPoly) -> BiPoly {
    let prim = primitive_y(p);
    if prim.deg_y().unwrap_or(0) == 0 {
        return prim;
    }
    let g = gcd_xy(&prim, &prim.partial(super::bi::Axis::Y));
    normalize(&prim.div_exact(&g).expect("gcd divides"))
}
