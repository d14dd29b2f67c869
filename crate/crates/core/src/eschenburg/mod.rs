//! Parameter model for the cohomogeneity-two spaces `E_{p,q1,q2}`:
//! admissibility, the polynomials `f` and `g`, and the two classifiers.

pub mod table;

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::boxsign::{decide_nonpositive, Budget, SignCertificate, SignVerdict};
use crate::exactpoly::rational::{big, int};
use crate::exactpoly::{Axis, BiPoly, RatBox, Rational};

pub use table::{DiscrepancyKind, TableDiscrepancy};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub p: BigInt,
    pub q1: BigInt,
    pub q2: BigInt,
}

impl Triple {
    pub fn new(p: i64, q1: i64, q2: i64) -> Self {
        Triple { p: p.into(), q1: q1.into(), q2: q2.into() }
    }

    pub fn as_rationals(&self) -> (Rational, Rational, Rational) {
        (big(&self.p), big(&self.q1), big(&self.q2))
    }

    pub fn to_i64(&self) -> Option<(i64, i64, i64)> {
        Some((self.p.to_i64()?, self.q1.to_i64()?, self.q2.to_i64()?))
    }

    /// `p - q1 - 2 q2`, the factor that separates the generic case.
    pub fn sigma(&self) -> BigInt {
        &self.p - &self.q1 - &self.q2 * 2
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.q1, self.q2)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EschenburgError {
    Inadmissible(Triple),
    /// Both `q1` and `q2` vanish, so no sign convention can be met.
    NotNormalizable,
    /// `g` is undefined when `p = q1 + 2 q2`.
    DegenerateG(Triple),
    OutsideKRegime(Triple),
    /// The sign decision ran out of budget; the verdict is unknown.
    BudgetExhausted(Triple),
}

impl fmt::Display for EschenburgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EschenburgError::Inadmissible(t) => write!(f, "triple {} is not admissible", t),
            EschenburgError::NotNormalizable => f.write_str("q1 = q2 = 0 cannot be normalized"),
            EschenburgError::DegenerateG(t) => write!(f, "g is undefined for {} since p = q1 + 2 q2", t),
            EschenburgError::OutsideKRegime(t) => {
                write!(f, "triple {} is outside the regime q1 + q2 < 0, q1 + q2 <= p <= q2", t)
            }
            EschenburgError::BudgetExhausted(t) => write!(f, "sign decision for {} exhausted its budget", t),
        }
    }
}

impl core::error::Error for EschenburgError {}

fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// The three gcd conditions and the sign convention `q2 > 0` or `(q2 = 0, q1 > 0)`.
pub fn is_admissible(t: &Triple) -> bool {
    let one = BigInt::one();
    let conv = t.q2.is_positive() || (t.q2.is_zero() && t.q1.is_positive());
    conv && gcd(&t.q1, &t.q2) == one && gcd(&(&t.p - &t.q1), &t.q2) == one && gcd(&t.q1, &(&t.p - &t.q2)) == one
}

/// Applies the global negation if needed to reach the sign convention.
pub fn normalize(p: i64, q1: i64, q2: i64) -> Result<Triple, EschenburgError> {
    normalize_big(Triple::new(p, q1, q2))
}

pub fn normalize_big(t: Triple) -> Result<Triple, EschenburgError> {
    if t.q1.is_zero() && t.q2.is_zero() {
        return Err(EschenburgError::NotNormalizable);
    }
    let ok = t.q2.is_positive() || (t.q2.is_zero() && t.q1.is_positive());
    if ok {
        Ok(t)
    } else {
        Ok(Triple { p: -t.p, q1: -t.q1, q2: -t.q2 })
    }
}

fn c(v: &BigInt) -> BiPoly {
    BiPoly::constant(big(v))
}

fn ci(v: i64) -> BiPoly {
    BiPoly::constant(int(v))
}

/// Builds `f` from the construction of the zero-curvature plane: with
/// `x = cos^2 r`, `y = cos^2 t`, `f` is the numerator of `1 - beta - Im(y3)^2`
/// over the squared denominator of `Im(y3)`.
pub fn derive_f_oracle(t: &Triple) -> BiPoly {
    let (p, q1, q2) = (&t.p, &t.q1, &t.q2);
    let x = BiPoly::x();
    let y = BiPoly::y();
    let xy = &x * &y;
    let one = ci(1);
    let omx = &one - &x;
    let omy = &one - &y;
    // Denominator of beta, and of Im(y3) up to -2 sin r sin t cos t.
    let q = &(&xy * &c(&(p * (p - q1 * 2 - q2)))) + &c(&(q1 * (p - q2)));
    // Numerator of beta.
    let pp = &(&xy * &c(&(p * (p - q1 * 3)))) + &c(&(q1 * (p + q1)));
    // Numerator of Im(y3) after cos^2 r -> x, sin^2 r -> 1 - x, cos^2 t -> y, sin^2 t -> 1 - y.
    let lin = &(&x * &c(&(q1 - q2))) + &c(&(p - q1 * 3));
    let n2 = &(&(&lin * &c(p)) * &x) * &y.pow(2);
    let n1a = &x * &c(&(-(p * q2) + q1 * (q1 + q2 * 3)));
    let n1b = &omx * &c(&(p * q1));
    let n1 = &(&n1a + &n1b) * &y;
    let n0 = &(&omy * &c(&-(q1 * q1))) - &c(&(q1 * q2));
    let n = &(&n2 + &n1) + &n0;
    let lhs = &(&(&(&(&omx * &omy) * &y) * &q) * &(&q - &pp)) * &ci(4);
    &lhs - &n.pow(2)
}

/// `f_{p,q1,q2}`. The derivation is authoritative; see [`table_audit`] for
/// the comparison with the printed coefficient list.
pub fn build_f(t: &Triple) -> BiPoly {
    derive_f_oracle(t)
}

/// Discrepancies between the printed table and [`derive_f_oracle`].
pub fn table_audit() -> Vec<TableDiscrepancy> {
    table::audit_with(derive_f_oracle)
}

/// `g = (x f_x - y f_y) / (-2 (p - q1 - 2 q2) y)`, divided exactly.
pub fn build_g(t: &Triple) -> Result<BiPoly, EschenburgError> {
    let s = t.sigma();
    if s.is_zero() {
        return Err(EschenburgError::DegenerateG(t.clone()));
    }
    let f = build_f(t);
    let num = &(&BiPoly::x() * &f.partial(Axis::X)) - &(&BiPoly::y() * &f.partial(Axis::Y));
    let den = BiPoly::monomial(0, 1, big(&(s * -2)));
    Ok(num.div_exact(&den).expect("x f_x - y f_y is divisible by its factor"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    AlmostPositive,
    NotAlmostPositive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    TheoremMain2,
    PolynomialCriterion,
    TabulatedSpecialCase,
}

/// Which part of the theorem decided the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `0, p` both lie between `q2` and `q1 + q2`.
    Interval,
    /// `p >= q1 + q2 > 0` and `q1 >= 0`.
    Dominant,
    Exceptional,
    None,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Detail {
    Theorem(Branch),
    Certificate(Box<SignCertificate>),
    Tabulated,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    pub provenance: Provenance,
    pub detail: Detail,
}

pub const EXCEPTIONAL: [(i64, i64, i64); 3] = [(0, 0, 1), (0, 1, 0), (1, 1, 0)];
/// Triples outside the polynomial criterion, with their known verdicts.
pub const TABULATED: [((i64, i64, i64), Verdict); 4] = [
    ((0, 0, 1), Verdict::NotAlmostPositive),
    ((0, 1, 0), Verdict::NotAlmostPositive),
    ((1, 1, 0), Verdict::NotAlmostPositive),
    ((0, -1, 1), Verdict::AlmostPositive),
];

fn is_one_of(t: &Triple, list: &[(i64, i64, i64)]) -> bool {
    t.to_i64().is_some_and(|v| list.contains(&v))
}

/// Which theorem branch, if any, holds (exceptional triples excluded).
pub fn theorem_branch(t: &Triple) -> Branch {
    if is_one_of(t, &EXCEPTIONAL) {
        return Branch::Exceptional;
    }
    let s = &t.q1 + &t.q2;
    let (lo, hi) = if s <= t.q2 { (&s, &t.q2) } else { (&t.q2, &s) };
    let zero = BigInt::zero();
    let inside = |v: &BigInt| lo <= v && v <= hi;
    if inside(&zero) && inside(&t.p) {
        return Branch::Interval;
    }
    if t.p >= s && s.is_positive() && !t.q1.is_negative() {
        return Branch::Dominant;
    }
    Branch::None
}

/// Admissible, or one of the named exceptional triples. `(1, 1, 0)` fails the
/// gcd test (`gcd(0, 0) = 0`) but is still classified.
fn classifiable(t: &Triple) -> bool {
    is_admissible(t) || is_one_of(t, &EXCEPTIONAL)
}

pub fn classify_theorem(t: &Triple) -> Result<Classification, EschenburgError> {
    if !classifiable(t) {
        return Err(EschenburgError::Inadmissible(t.clone()));
    }
    let b = theorem_branch(t);
    let verdict = match b {
        Branch::Interval | Branch::Dominant => Verdict::AlmostPositive,
        Branch::Exceptional | Branch::None => Verdict::NotAlmostPositive,
    };
    Ok(Classification { verdict, provenance: Provenance::TheoremMain2, detail: Detail::Theorem(b) })
}

pub fn classify_polynomial(t: &Triple, budget: Budget) -> Result<Classification, EschenburgError> {
    if !classifiable(t) {
        return Err(EschenburgError::Inadmissible(t.clone()));
    }
    if let Some(tv) = t.to_i64() {
        if let Some((_, v)) = TABULATED.iter().find(|(k, _)| *k == tv) {
            return Ok(Classification {
                verdict: *v,
                provenance: Provenance::TabulatedSpecialCase,
                detail: Detail::Tabulated,
            });
        }
    }
    let cert = decide_nonpositive(&build_f(t), &RatBox::unit(), budget);
    if cert.budget_exhausted {
        return Err(EschenburgError::BudgetExhausted(t.clone()));
    }
    let verdict = match cert.verdict {
        SignVerdict::Nonpositive => Verdict::AlmostPositive,
        SignVerdict::Positive => Verdict::NotAlmostPositive,
    };
    Ok(Classification { verdict, provenance: Provenance::PolynomialCriterion, detail: Detail::Certificate(Box::new(cert)) })
}

/// All admissible triples with entries bounded by `bound`, ordered by `(p, q1, q2)`.
pub fn enumerate_admissible(bound: i64) -> Vec<Triple> {
    let mut out = Vec::new();
    for p in -bound..=bound {
        for q1 in -bound..=bound {
            for q2 in -bound..=bound {
                let t = Triple::new(p, q1, q2);
                if is_admissible(&t) {
                    out.push(t);
                }
            }
        }
    }
    out
}

/// Number of triples in the bounded cube that fail admissibility.
pub fn count_inadmissible(bound: i64) -> usize {
    let side = (2 * bound + 1) as usize;
    side * side * side - enumerate_admissible(bound).len()
}

/// One line of a theorem-versus-polynomial scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub triple: Triple,
    pub theorem: Verdict,
    pub branch: Branch,
    /// `None` when the sign decision could not conclude.
    pub poly: Option<Verdict>,
    pub provenance: Provenance,
    pub witness: Option<(Rational, Rational)>,
    pub critical_points: usize,
    pub leaves: usize,
}

impl ScanRow {
    pub fn agree(&self) -> bool {
        self.poly == Some(self.theorem)
    }
}

pub fn scan_row(t: &Triple, budget: Budget) -> ScanRow {
    let th = classify_theorem(t).expect("scan rows are admissible");
    let branch = match th.detail {
        Detail::Theorem(b) => b,
        _ => Branch::None,
    };
    let (poly, provenance, witness, critical_points, leaves) = match classify_polynomial(t, budget) {
        Ok(c) => {
            let (w, cp, lv) = match &c.detail {
                Detail::Certificate(cert) => (cert.witness.clone(), cert.critical_points.len(), cert.leaves.len()),
                _ => (None, 0, 0),
            };
            (Some(c.verdict), c.provenance, w, cp, lv)
        }
        Err(_) => (None, Provenance::PolynomialCriterion, None, 0, 0),
    };
    ScanRow { triple: t.clone(), theorem: th.verdict, branch, poly, provenance, witness, critical_points, leaves }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub bound: i64,
    pub rows: Vec<ScanRow>,
    pub skipped_inadmissible: usize,
    pub table_discrepancies: Vec<TableDiscrepancy>,
}

impl ScanReport {
    pub fn mismatches(&self) -> Vec<&ScanRow> {
        self.rows.iter().filter(|r| !r.agree()).collect()
    }
}

/// Sequential theorem-versus-polynomial comparison over the bounded cube.
pub fn cross_validate(bound: i64, budget: Budget) -> ScanReport {
    let rows = enumerate_admissible(bound).iter().map(|t| scan_row(t, budget)).collect();
    ScanReport { bound, rows, skipped_inadmissible: count_inadmissible(bound), table_discrepancies: table_audit() }
}

/// The loci `p x y - q1`, `p y (1 - x) - q2`, `p y - q1 - q2` in `(x, y) = (cos^2 r, cos^2 t)`.
pub fn type123_loci(t: &Triple) -> [BiPoly; 3] {
    let x = BiPoly::x();
    let y = BiPoly::y();
    let (p, q1, q2) = (c(&t.p), c(&t.q1), c(&t.q2));
    let l1 = &(&(&p * &x) * &y) - &q1;
    let l2 = &(&(&p * &y) * &(&ci(1) - &x)) - &q2;
    let l3 = &(&(&p * &y) - &q1) - &q2;
    [l1, l2, l3]
}

/// Whether the triple satisfies `q1 + q2 < 0` and `q1 + q2 <= p <= q2`.
pub fn in_k_regime(t: &Triple) -> bool {
    let s = &t.q1 + &t.q2;
    s.is_negative() && s <= t.p && t.p <= t.q2
}

/// `k(s, c) = 4p((p - q1 - q2) s - q2) c + 4 q2 (q1 + q2)` with `s = sin^2 r`, `c = cos^2 t`.
pub fn k_poly(t: &Triple) -> BiPoly {
    let s = BiPoly::x();
    let cc = BiPoly::y();
    let (p, q1, q2) = (&t.p, &t.q1, &t.q2);
    let inner = &(&s * &c(&(p - q1 - q2))) - &c(q2);
    &(&(&inner * &cc) * &c(&(p * 4))) + &c(&(q2 * (q1 + q2) * 4))
}

pub fn k_regime_check(t: &Triple, budget: Budget) -> Result<SignCertificate, EschenburgError> {
    if !in_k_regime(t) {
        return Err(EschenburgError::OutsideKRegime(t.clone()));
    }
    Ok(decide_nonpositive(&k_poly(t), &RatBox::unit(), budget))
}
