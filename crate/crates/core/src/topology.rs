//! The cohomology invariant `ell`, homogeneous matches, and strong
//! inhomogeneity certificates.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::eschenburg::{is_admissible, Triple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TopologyError {
    DimensionTooSmall(u32),
    Inadmissible(Triple),
}

impl fmt::Display for TopologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyError::DimensionTooSmall(n) => write!(f, "n = {} but n >= 2 is required", n),
            TopologyError::Inadmissible(t) => write!(f, "triple {} is not admissible", t),
        }
    }
}

impl core::error::Error for TopologyError {}

/// `sum_{i<m} a^i b^(m-1-i)`, which is `(a^m - b^m)/(a - b)` when `a != b`.
pub fn homogeneous_sum(a: &BigInt, b: &BigInt, m: u32) -> BigInt {
    let mut acc = BigInt::zero();
    let mut ai = BigInt::one();
    for i in 0..m {
        acc += &ai * num_traits::pow(b.clone(), (m - 1 - i) as usize);
        ai *= a;
    }
    acc
}

pub fn ell(n: u32, t: &Triple) -> BigInt {
    &t.p * homogeneous_sum(&t.q1, &t.q2, n) - homogeneous_sum(&t.q1, &t.q2, n + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceInvariants {
    pub n: u32,
    pub dim: u32,
    pub ell: BigInt,
    /// `|ell|`, or `None` when `ell = 0` and no group is claimed.
    pub h2n_order: Option<BigInt>,
}

pub fn invariants(n: u32, t: &Triple) -> Result<SpaceInvariants, TopologyError> {
    if n < 2 {
        return Err(TopologyError::DimensionTooSmall(n));
    }
    let l = ell(n, t);
    let order = if l.is_zero() { None } else { Some(l.abs()) };
    Ok(SpaceInvariants { n, dim: 4 * n - 1, ell: l, h2n_order: order })
}

/// Searches `(0, r1, r2)` with `|r1|, |r2| <= bound`, `gcd(r1, r2) = 1` and the
/// sign convention, in the order `r1` ascending then `r2` ascending.
pub fn homogeneous_match(n: u32, target: &BigInt, bound: i64) -> Option<(i64, i64)> {
    let want = target.abs();
    for r1 in -bound..=bound {
        for r2 in 0..=bound {
            if !(r2 > 0 || r1 > 0) || r1.gcd(&r2) != 1 {
                continue;
            }
            if ell(n, &Triple::new(0, r1, r2)).abs() == want {
                return Some((r1, r2));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimalityMethod {
    /// Trial division by every integer up to the square root.
    TrialDivision,
    /// Strong-pseudoprime test to the first twelve prime bases, which is a
    /// proof below 3.3 * 10^24.
    DeterministicMillerRabin,
    /// Same bases beyond the proven range; the answer is probable only.
    ProbableMillerRabin,
}

impl PrimalityMethod {
    pub fn name(self) -> &'static str {
        match self {
            PrimalityMethod::TrialDivision => "trial-division",
            PrimalityMethod::DeterministicMillerRabin => "deterministic-miller-rabin",
            PrimalityMethod::ProbableMillerRabin => "probable-miller-rabin",
        }
    }

    pub fn is_proof(self) -> bool {
        !matches!(self, PrimalityMethod::ProbableMillerRabin)
    }
}

const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn trial_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn strong_probable_prime(n: &BigInt, base: u32) -> bool {
    let one = BigInt::one();
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let a = BigInt::from(base) % n;
    if a.is_zero() {
        return true;
    }
    let mut x = a.modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Primality of `|n|` together with the method that decided it.
pub fn is_prime(n: &BigInt) -> (bool, PrimalityMethod) {
    let n = n.abs();
    if let Some(v) = n.to_u64() {
        if v < (1u64 << 32) {
            return (trial_division(v), PrimalityMethod::TrialDivision);
        }
    }
    for &p in MR_BASES.iter() {
        if (&n % p).is_zero() {
            return (false, PrimalityMethod::TrialDivision);
        }
    }
    let prime = MR_BASES.iter().all(|&b| strong_probable_prime(&n, b));
    let limit: BigInt = "3317044064679887385961981".parse().unwrap();
    let method = if n < limit {
        PrimalityMethod::DeterministicMillerRabin
    } else {
        PrimalityMethod::ProbableMillerRabin
    };
    (prime, method)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InhomogeneityCertificate {
    /// `n` even and `ell` even, while every homogeneous model has odd `ell`.
    Parity { n: u32, ell: BigInt },
    /// `n` odd and `|ell|` a prime `= 3 mod 4`, which no homogeneous model attains.
    PrimeMod4 { n: u32, prime: BigInt, method: PrimalityMethod },
    /// No obstruction applies; records whether a homogeneous model with the
    /// same `|ell|` exists within `bound`. Evidence only, never a proof.
    BoundedSearchOnly { n: u32, ell: BigInt, bound: i64, homogeneous_match: Option<(i64, i64)> },
}

impl InhomogeneityCertificate {
    pub fn is_conclusive(&self) -> bool {
        match self {
            InhomogeneityCertificate::Parity { .. } => true,
            InhomogeneityCertificate::PrimeMod4 { method, .. } => method.is_proof(),
            InhomogeneityCertificate::BoundedSearchOnly { .. } => false,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InhomogeneityCertificate::Parity { .. } => "parity",
            InhomogeneityCertificate::PrimeMod4 { .. } => "prime-mod-4",
            InhomogeneityCertificate::BoundedSearchOnly { .. } => "bounded-search-only",
        }
    }
}

pub fn inhomogeneity_certificate(
    n: u32,
    t: &Triple,
    search_bound: i64,
) -> Result<InhomogeneityCertificate, TopologyError> {
    if n < 2 {
        return Err(TopologyError::DimensionTooSmall(n));
    }
    if !is_admissible(t) {
        return Err(TopologyError::Inadmissible(t.clone()));
    }
    let l = ell(n, t);
    if n % 2 == 0 && l.is_even() {
        return Ok(InhomogeneityCertificate::Parity { n, ell: l });
    }
    if n % 2 == 1 {
        let a = l.abs();
        if (&a % 4u32) == BigInt::from(3) {
            let (prime, method) = is_prime(&a);
            if prime {
                return Ok(InhomogeneityCertificate::PrimeMod4 { n, prime: a, method });
            }
        }
    }
    let m = homogeneous_match(n, &l, search_bound);
    Ok(InhomogeneityCertificate::BoundedSearchOnly { n, ell: l, bound: search_bound, homogeneous_match: m })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeHit {
    pub k: u64,
    pub p: u64,
    pub prime: u64,
    pub method: PrimalityMethod,
}

/// The first `count` values `k >= 1` with `4kn - 1` prime. For odd `n` the
/// triple `(4k + 1, 1, 1)` then has `|ell| = 4kn - 1`.
pub fn prime_search(n: u32, count: usize) -> Vec<PrimeHit> {
    let mut out = Vec::with_capacity(count);
    let mut k = 1u64;
    while out.len() < count {
        let cand = 4 * k * n as u64 - 1;
        let (prime, method) = is_prime(&BigInt::from(cand));
        if prime {
            out.push(PrimeHit { k, p: 4 * k + 1, prime: cand, method });
        }
        k += 1;
    }
    out
}
