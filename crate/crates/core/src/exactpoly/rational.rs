//! Helpers around [`BigRational`], the exact scalar used everywhere.

use alloc::string::String;
use core::cmp::Ordering;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always stored in lowest terms with positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// `n / d`; panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn half(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// -1, 0 or 1.
pub fn sign(r: &Rational) -> i8 {
    match r.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    // Ratio::to_f64 keeps precision for huge numerators and denominators.
    r.to_f64().unwrap_or(f64::NAN)
}

/// `"num/den"`, or just `"num"` when the denominator is one.
pub fn to_string(r: &Rational) -> String {
    alloc::format!("{}", r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError;

impl core::fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("malformed rational (expected `n` or `n/d` with d != 0)")
    }
}

impl core::error::Error for ParseRationalError {}

/// Accepts `"n"` and `"n/d"`.
pub fn parse(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| ParseRationalError)?;
    let d = BigInt::from_str(d).map_err(|_| ParseRationalError)?;
    if d.is_zero() {
        return Err(ParseRationalError);
    }
    Ok(Rational::new(n, d))
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}
