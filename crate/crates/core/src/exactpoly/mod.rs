//! Exact rational arithmetic and univariate/bivariate polynomial algebra.
//!
//! No floating point is involved in any decision made here; `*_f64`
//! helpers exist only for reporting.

pub mod bernstein;
pub mod bi;
pub mod rational;
pub mod resultant;
pub mod sturm;
pub mod uni;

pub use bernstein::{bernstein_coeffs, casteljau_half, BernsteinPatch, EmptyBoxError, RatBox};
pub use bi::{Axis, BiPoly, Edge};
pub use rational::Rational;
pub use resultant::{gcd_xy, resultant_y, subresultant_y, ZeroPolynomialError};
pub use sturm::{isolate_roots, sturm_decide, RootInterval, SturmChain, UniVerdict};
pub use uni::UniPoly;

/// Failure of an exact polynomial division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactDivisionError {
    ZeroDivisor,
    NonzeroRemainder,
}

impl core::fmt::Display for ExactDivisionError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ExactDivisionError::ZeroDivisor => f.write_str("division by the zero polynomial"),
            ExactDivisionError::NonzeroRemainder => f.write_str("division leaves a nonzero remainder"),
        }
    }
}

impl core::error::Error for ExactDivisionError {}

/// `f(x, y)`.
pub fn bipoly_eval(f: &BiPoly, x: &Rational, y: &Rational) -> Rational {
    f.eval(x, y)
}

pub fn partial(f: &BiPoly, axis: Axis) -> BiPoly {
    f.partial(axis)
}

pub fn edge_restrict(f: &BiPoly, edge: Edge) -> UniPoly {
    f.edge_restrict(edge)
}
