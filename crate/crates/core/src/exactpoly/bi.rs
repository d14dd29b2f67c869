use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::rational::{int, Rational};
use super::uni::UniPoly;
use super::ExactDivisionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
}

/// The four sides of a box: `X0` is `x = x_lo`, `X1` is `x = x_hi`, and so on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    X0,
    X1,
    Y0,
    Y1,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::X0, Edge::X1, Edge::Y0, Edge::Y1];

    pub fn name(self) -> &'static str {
        match self {
            Edge::X0 => "x0",
            Edge::X1 => "x1",
            Edge::Y0 => "y0",
            Edge::Y1 => "y1",
        }
    }
}

/// Sparse bivariate polynomial: `(i, j) -> c` stands for `c x^i y^j`. Zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: Rational) -> Self {
        BiPoly::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = BiPoly::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        BiPoly::monomial(1, 0, Rational::one())
    }

    pub fn y() -> Self {
        BiPoly::monomial(0, 1, Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Rational)>>(it: I) -> Self {
        let mut p = BiPoly::zero();
        for (i, j, c) in it {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn from_int_terms(ts: &[(u32, u32, i64)]) -> Self {
        BiPoly::from_terms(ts.iter().map(|&(i, j, c)| (i, j, int(c))))
    }

    /// Adds `c x^i y^j`, dropping the entry if it cancels.
    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Terms in lexicographic `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest x-exponent, `None` when zero.
    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        // Horner in y over x-polynomial coefficients.
        let cols = self.y_coeffs();
        let mut acc = Rational::zero();
        for c in cols.iter().rev() {
            acc = acc * y + c.eval(x);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| super::rational::to_f64(c) * libm::pow(x, i as f64) * libm::pow(y, j as f64))
            .sum()
    }

    pub fn partial(&self, axis: Axis) -> Self {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            match axis {
                Axis::X if i > 0 => out.add_term(i - 1, j, c * int(i as i64)),
                Axis::Y if j > 0 => out.add_term(i, j - 1, c * int(j as i64)),
                _ => {}
            }
        }
        out
    }

    /// Restriction to `x = 0`, `x = 1`, `y = 0` or `y = 1`.
    pub fn edge_restrict(&self, edge: Edge) -> UniPoly {
        match edge {
            Edge::X0 => self.subs_x(&Rational::zero()),
            Edge::X1 => self.subs_x(&Rational::one()),
            Edge::Y0 => self.subs_y(&Rational::zero()),
            Edge::Y1 => self.subs_y(&Rational::one()),
        }
    }

    /// `f(x0, y)` as a polynomial in y.
    pub fn subs_x(&self, x0: &Rational) -> UniPoly {
        let mut cs: Vec<Rational> = Vec::new();
        for (&(i, j), c) in &self.terms {
            let j = j as usize;
            if cs.len() <= j {
                cs.resize(j + 1, Rational::zero());
            }
            cs[j] += c * pow(x0, i);
        }
        UniPoly::new(cs)
    }

    /// `f(x, y0)` as a polynomial in x.
    pub fn subs_y(&self, y0: &Rational) -> UniPoly {
        self.swap_xy().subs_x(y0)
    }

    /// `f(y, x)`.
    pub fn swap_xy(&self) -> Self {
        BiPoly { terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect() }
    }

    /// Coefficients as a polynomial in y: entry `j` is the x-polynomial multiplying `y^j`.
    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        let Some(dy) = self.deg_y() else { return Vec::new() };
        let mut cols: Vec<Vec<Rational>> = vec![Vec::new(); dy as usize + 1];
        for (&(i, j), c) in &self.terms {
            let col = &mut cols[j as usize];
            if col.len() <= i as usize {
                col.resize(i as usize + 1, Rational::zero());
            }
            col[i as usize] = c.clone();
        }
        cols.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_y_coeffs(cols: &[UniPoly]) -> Self {
        let mut p = BiPoly::zero();
        for (j, col) in cols.iter().enumerate() {
            for (i, c) in col.coeffs().iter().enumerate() {
                p.add_term(i as u32, j as u32, c.clone());
            }
        }
        p
    }

    /// Embeds a polynomial in x.
    pub fn from_x_poly(u: &UniPoly) -> Self {
        BiPoly::from_y_coeffs(core::slice::from_ref(u))
    }

    pub fn from_y_poly(u: &UniPoly) -> Self {
        BiPoly::from_x_poly(u).swap_xy()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(&k, c)| (k, c * s)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = BiPoly::constant(Rational::one());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `f(a + b x, c + d y)`; used to move a box onto the unit square.
    pub fn affine(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Self {
        let cols: Vec<UniPoly> = self.y_coeffs().iter().map(|u| u.affine(a, b)).collect();
        // Now substitute y -> c + d y on the y side.
        let lin = BiPoly::from_terms([(0, 0, c.clone()), (0, 1, d.clone())]);
        let mut acc = BiPoly::zero();
        for col in cols.iter().rev() {
            acc = &(&acc * &lin) + &BiPoly::from_x_poly(col);
        }
        acc
    }

    /// Lex-leading term with y dominant: largest j, then largest i.
    fn lead(&self) -> Option<((u32, u32), &Rational)> {
        self.terms.iter().max_by_key(|(&(i, j), _)| (j, i)).map(|(&k, c)| (k, c))
    }

    /// Exact quotient `self / d`; a nonzero remainder is an error, never truncated.
    pub fn div_exact(&self, d: &BiPoly) -> Result<BiPoly, ExactDivisionError> {
        let ((di, dj), dc) = match d.lead() {
            Some((k, c)) => (k, c.clone()),
            None => return Err(ExactDivisionError::ZeroDivisor),
        };
        let mut r = self.clone();
        let mut q = BiPoly::zero();
        while let Some(((ri, rj), rc)) = r.lead() {
            if ri < di || rj < dj {
                return Err(ExactDivisionError::NonzeroRemainder);
            }
            let t = BiPoly::monomial(ri - di, rj - dj, rc / &dc);
            r = &r - &(&t * d);
            q = &q + &t;
        }
        Ok(q)
    }
}

fn pow(x: &Rational, e: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &o.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect() }
    }
}

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, o: BiPoly) -> BiPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            let mono = i + j > 0;
            if !mono || !a.is_one() {
                write!(f, "{}", a)?;
                if mono {
                    f.write_str("*")?;
                }
            }
            let mut sep = "";
            for (v, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => {
                        write!(f, "{}{}", sep, v)?;
                        sep = "*";
                    }
                    _ => {
                        write!(f, "{}{}^{}", sep, v, e)?;
                        sep = "*";
                    }
                }
            }
        }
        Ok(())
    }
}
