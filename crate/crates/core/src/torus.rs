//! Free two-torus actions on `U(n+1)/U(n-1)` of the form
//! `(C, z, w) * B = diag(z^p, 1, ..) B diag(z^q1 w^s1, z^q2 w^s2, C)^-1`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusAction {
    pub p: i64,
    pub q1: i64,
    pub q2: i64,
    pub s1: i64,
    pub s2: i64,
}

impl TorusAction {
    pub const fn new(p: i64, q1: i64, q2: i64, s1: i64, s2: i64) -> Self {
        TorusAction { p, q1, q2, s1, s2 }
    }

    fn key(&self) -> (i64, i64, i64, i64, i64) {
        (self.p, self.q1, self.q2, self.s1, self.s2)
    }

    /// The three quantities whose absolute values must all be 1.
    pub fn freeness_minors(&self) -> [i64; 3] {
        let TorusAction { p, q1, q2, s1, s2 } = *self;
        [q1 * s2 - q2 * s1, (q1 - p) * s2 - q2 * s1, q1 * s2 - (q2 - p) * s1]
    }

    pub fn is_effective(&self) -> bool {
        self.p.gcd(&self.q1).gcd(&self.q2) == 1 && self.s1.gcd(&self.s2) == 1
    }
}

impl fmt::Display for TorusAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}, {})", self.p, self.q1, self.q2, self.s1, self.s2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusError {
    /// `gcd(s1, s2) != 1`, so the `w` circle does not act effectively.
    NonPrimitiveS(TorusAction),
    NotFree(TorusAction),
}

impl fmt::Display for TorusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusError::NonPrimitiveS(a) => write!(f, "gcd(s1, s2) != 1 for {}", a),
            TorusError::NotFree(a) => write!(f, "action {} is not free", a),
        }
    }
}

impl core::error::Error for TorusError {}

pub fn is_free(a: &TorusAction) -> Result<bool, TorusError> {
    if a.s1.gcd(&a.s2) != 1 {
        return Err(TorusError::NonPrimitiveS(*a));
    }
    Ok(a.freeness_minors().iter().all(|m| m.abs() == 1))
}

/// `w -> z^k w`, which shifts `q_i` by `k s_i`.
pub fn reparameterize(a: &TorusAction, k: i64) -> TorusAction {
    TorusAction { q1: a.q1 + k * a.s1, q2: a.q2 + k * a.s2, ..*a }
}

/// `w -> w^-1`.
pub fn flip_w(a: &TorusAction) -> TorusAction {
    TorusAction { s1: -a.s1, s2: -a.s2, ..*a }
}

/// `z -> z^-1`.
pub fn negate(a: &TorusAction) -> TorusAction {
    TorusAction { p: -a.p, q1: -a.q1, q2: -a.q2, ..*a }
}

/// Exchanges the two slots `(q1, s1)` and `(q2, s2)`.
pub fn swap_slots(a: &TorusAction) -> TorusAction {
    TorusAction { q1: a.q2, q2: a.q1, s1: a.s2, s2: a.s1, ..*a }
}

fn reduce(a: &TorusAction) -> TorusAction {
    let mut b = *a;
    if b.p < 0 {
        b = negate(&b);
    }
    if b.s2 < 0 || (b.s2 == 0 && b.s1 < 0) {
        b = flip_w(&b);
    }
    if b.s1 != 0 {
        let m = b.s1.abs();
        let target = b.q1.rem_euclid(m);
        let k = (target - b.q1) / b.s1;
        reparameterize(&b, k)
    } else {
        // gcd(s1, s2) = 1 forces s2 = 1 here.
        reparameterize(&b, -b.q2 / b.s2)
    }
}

/// Canonical representative: positive `p`, `s` with positive leading sign
/// from `s2`, `q1` reduced modulo `|s1|` (or `q2 = 0` when `s1 = 0`), and the
/// lexicographically smaller of the two slot orders.
pub fn normalize_action(a: &TorusAction) -> TorusAction {
    let u = reduce(a);
    let v = reduce(&swap_slots(a));
    if v.key() < u.key() {
        v
    } else {
        u
    }
}

pub const CANONICAL: [TorusAction; 2] = [TorusAction::new(2, 0, 1, -1, 1), TorusAction::new(2, 0, 1, 1, 0)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    pub bound: i64,
    /// Free effective tuples found before normalization.
    pub survivors: usize,
    pub canonical: BTreeSet<TorusAction>,
    /// Canonical forms outside the known pair, flagged rather than merged.
    pub unexpected: Vec<TorusAction>,
    /// Every survivor has `p s1, p s2` in `{0, 2, -2}`.
    pub ps_constraint_holds: bool,
}

fn tuples_for_p(p: i64, bound: i64, out: &mut Vec<TorusAction>) {
    for q1 in -bound..=bound {
        for q2 in -bound..=bound {
            if p.gcd(&q1).gcd(&q2) != 1 {
                continue;
            }
            for s1 in -bound..=bound {
                for s2 in -bound..=bound {
                    if s1.gcd(&s2) != 1 {
                        continue;
                    }
                    let a = TorusAction { p, q1, q2, s1, s2 };
                    if let Ok(true) = is_free(&a) {
                        out.push(a);
                    }
                }
            }
        }
    }
}

/// All free effective actions with entries in `[-bound, bound]` for the
/// given `p`; exposed so callers can split the search over `p`.
pub fn free_actions_with_p(p: i64, bound: i64) -> Vec<TorusAction> {
    let mut v = Vec::new();
    if p != 0 {
        tuples_for_p(p, bound, &mut v);
    }
    v
}

pub fn summarize(bound: i64, survivors: &[TorusAction]) -> Enumeration {
    let mut canonical = BTreeSet::new();
    let mut ps = true;
    for a in survivors {
        canonical.insert(normalize_action(a));
        let ok = |v: i64| v == 0 || v.abs() == 2;
        ps &= ok(a.p * a.s1) && ok(a.p * a.s2);
    }
    let unexpected = canonical.iter().filter(|a| !CANONICAL.contains(a)).copied().collect();
    Enumeration { bound, survivors: survivors.len(), canonical, unexpected, ps_constraint_holds: ps }
}

pub fn enumerate_free(bound: i64) -> Enumeration {
    let mut all = Vec::new();
    for p in -bound..=bound {
        all.extend(free_actions_with_p(p, bound));
    }
    summarize(bound, &all)
}
