//! The printed coefficient table of `f`, kept verbatim and parsed with a
//! tiny expression reader so that corrupt entries surface as parse failures
//! instead of being silently repaired.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Triple;
use crate::exactpoly::{BiPoly, Rational};

/// `(i, j, printed right-hand side)`; zero groups are expanded.
pub const PRINTED: [(u32, u32, &str); 25] = [
    (4, 4, "-p^2 (q_1-q_2)^2"),
    (4, 0, "0"),
    (4, 1, "0"),
    (4, 2, "0"),
    (4, 3, "0"),
    (3, 4, "-2p^2(p-q_1 - 2q_2)(q_2-q_1)"),
    (3, 3, "-2p(q_1-q_2)(2p^2-5pq_1 - 3pq_2 + q_1^2+3q_1 q_2)"),
    (3, 0, "0"),
    (3, 1, "0"),
    (3, 2, "0"),
    (2, 4, "-p^2(p-q_1-2q_2)^2ce"),
    (2, 3, "2p(p-q_1-2q_2)(3pq_1 - p_1q_2 - 6q_1^2-2q_1q_2)"),
    (2, 2, "-p^2q_1^2 + 6p^2q_1q_2 - p^2q_2^2 - 4pq_1^3 - 4pq_1q_2^2 - q_1^4 - 6q_1^3q_2 - 9q_1^2q_2^2"),
    (2, 0, "0"),
    (2, 1, "0"),
    (1, 0, "0"),
    (1, 4, "0"),
    (1, 3, "-2 p q_1(p-q_1-2q_2)^2"),
    (1, 2, "2q_1(2p + q_1)(q_1-q_2)(p-q_1-2q_2)"),
    (1, 1, "2q_1(q_1+q_2)(pq_1 - pq_2 + q_1^2+q_1q_2)"),
    (0, 3, "0"),
    (0, 4, "0"),
    (0, 2, "-q_1^2(p-q_1-2q_2)^2"),
    (0, 1, "-2q_1^2(q_1+q_2)(p-q_1-2q_2)"),
    (0, 0, "-q_1^2(q_1+q_2)"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub message: String,
}

impl core::fmt::Display for ParseError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, ParseError> {
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '0'..='9' => {
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let t: String = cs[st..i].iter().collect();
                out.push(Tok::Num(t.parse().map_err(|_| ParseError { message: "bad number".to_string() })?));
            }
            c if c.is_ascii_alphabetic() => {
                // A symbol is one letter with an optional `_digits` subscript.
                let mut name = String::new();
                name.push(c);
                i += 1;
                if i + 1 < cs.len() && cs[i] == '_' && cs[i + 1].is_ascii_digit() {
                    name.push('_');
                    i += 1;
                    while i < cs.len() && cs[i].is_ascii_digit() {
                        name.push(cs[i]);
                        i += 1;
                    }
                }
                out.push(Tok::Ident(name));
            }
            other => return Err(ParseError { message: alloc::format!("unexpected character {:?}", other) }),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    env: &'a dyn Fn(&str) -> Option<Rational>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<Rational, ParseError> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc -= self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // Juxtaposition is multiplication, as in the printed formulas.
    fn term(&mut self) -> Result<Rational, ParseError> {
        let mut neg = false;
        while let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            neg = !neg;
        }
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc *= self.power()?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => acc *= self.power()?,
                _ => break,
            }
        }
        Ok(if neg { -acc } else { acc })
    }

    fn power(&mut self) -> Result<Rational, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let e = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => n.clone(),
                _ => return Err(ParseError { message: "exponent must be a literal".to_string() }),
            };
            self.pos += 1;
            let mut out = Rational::one();
            let mut k = BigInt::zero();
            while k < e {
                out *= &base;
                k += 1;
            }
            return Ok(out);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Rational, ParseError> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        match t {
            Some(Tok::Num(n)) => Ok(Rational::from_integer(n)),
            Some(Tok::Ident(name)) => {
                (self.env)(&name).ok_or_else(|| ParseError { message: alloc::format!("unknown symbol `{}`", name) })
            }
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.toks.get(self.pos) {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err(ParseError { message: "unbalanced parenthesis".to_string() }),
                }
            }
            _ => Err(ParseError { message: "unexpected end of expression".to_string() }),
        }
    }
}

/// Evaluates a printed entry at the given triple. Only `p`, `q_1`, `q_2` are known.
pub fn eval_printed(src: &str, t: &Triple) -> Result<Rational, ParseError> {
    let (p, q1, q2) = t.as_rationals();
    let env = move |s: &str| match s {
        "p" => Some(p.clone()),
        "q_1" => Some(q1.clone()),
        "q_2" => Some(q2.clone()),
        _ => None,
    };
    let mut parser = Parser { toks: lex(src)?, pos: 0, env: &env };
    let v = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(ParseError { message: "trailing input".to_string() });
    }
    Ok(v)
}

/// One disagreement between the printed table and the derived polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableDiscrepancy {
    pub i: u32,
    pub j: u32,
    pub printed: &'static str,
    pub kind: DiscrepancyKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiscrepancyKind {
    /// The printed entry does not parse (stray or unknown symbol).
    Unparseable(String),
    /// The printed entry parses but its value differs at some test triple.
    ValueMismatch { triple: (i64, i64, i64), printed: Rational, derived: Rational },
}

/// Triples used to compare polynomial coefficients pointwise; enough of
/// them that agreement as polynomials of degree <= 4 in each of p, q1, q2 follows.
fn probe_triples() -> Vec<Triple> {
    let mut v = Vec::new();
    for p in -2..=3 {
        for q1 in -2..=3 {
            for q2 in -2..=3 {
                v.push(Triple::new(p, q1, q2));
            }
        }
    }
    v
}

/// Compares every printed coefficient with `derived(t)` on a grid of
/// parameter values, sorted by `(i, j)`.
pub fn audit_with(derived: impl Fn(&Triple) -> BiPoly) -> Vec<TableDiscrepancy> {
    let probes = probe_triples();
    let polys: Vec<BiPoly> = probes.iter().map(&derived).collect();
    let mut out = Vec::new();
    for &(i, j, src) in PRINTED.iter() {
        let mut found = None;
        for (t, f) in probes.iter().zip(&polys) {
            match eval_printed(src, t) {
                Err(e) => {
                    found = Some(DiscrepancyKind::Unparseable(e.message));
                    break;
                }
                Ok(v) => {
                    let d = f.coeff(i, j);
                    if v != d {
                        found = Some(DiscrepancyKind::ValueMismatch { triple: t.to_i64().unwrap(), printed: v, derived: d });
                        break;
                    }
                }
            }
        }
        if let Some(kind) = found {
            out.push(TableDiscrepancy { i, j, printed: src, kind });
        }
    }
    out.sort_by_key(|d| (d.i, d.j));
    out
}

/// The printed table as a polynomial, when every entry parses.
pub fn literal_f(t: &Triple) -> Result<BiPoly, (u32, u32, ParseError)> {
    let mut f = BiPoly::zero();
    for &(i, j, src) in PRINTED.iter() {
        let v = eval_printed(src, t).map_err(|e| (i, j, e))?;
        f.add_term(i, j, v);
    }
    Ok(f)
}
