//! JSON encoding of core types. Rationals are always `"num/den"` strings,
//! big integers are decimal strings.

use apclab_core::boxsign::{CriticalPoint, CriticalSource, EdgeRecord, Leaf, LeafKind, SignCertificate, SignVerdict};
use apclab_core::eschenburg::{Branch, Provenance, ScanRow, Triple, Verdict};
use apclab_core::exactpoly::rational::{self, Rational};
use apclab_core::exactpoly::{BiPoly, Edge, RatBox, UniVerdict};
use apclab_core::torus::TorusAction;
use num_bigint::BigInt;
use serde_json::{json, Map, Value};
use std::str::FromStr;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("malformed {what}: {detail}")]
pub struct FormatError {
    pub what: &'static str,
    pub detail: String,
}

fn bad(what: &'static str, detail: impl Into<String>) -> FormatError {
    FormatError { what, detail: detail.into() }
}

pub fn rat(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn parse_rat(v: &Value) -> Result<Rational, FormatError> {
    let s = v.as_str().ok_or_else(|| bad("rational", v.to_string()))?;
    rational::parse(s).map_err(|e| bad("rational", format!("{:?}: {}", s, e)))
}

pub fn bigint(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn parse_bigint(v: &Value) -> Result<BigInt, FormatError> {
    match v {
        Value::String(s) => BigInt::from_str(s).map_err(|_| bad("integer", s.clone())),
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("integer", n.to_string())),
        _ => Err(bad("integer", v.to_string())),
    }
}

/// Small entries become JSON numbers, anything wider a string.
pub fn int_value(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => bigint(n),
    }
}

fn field<'a>(v: &'a Value, key: &str, what: &'static str) -> Result<&'a Value, FormatError> {
    v.get(key).ok_or_else(|| bad(what, format!("missing field {:?}", key)))
}

fn str_field<'a>(v: &'a Value, key: &str, what: &'static str) -> Result<&'a str, FormatError> {
    field(v, key, what)?.as_str().ok_or_else(|| bad(what, format!("{:?} is not a string", key)))
}

fn u64_field(v: &Value, key: &str, what: &'static str) -> Result<u64, FormatError> {
    field(v, key, what)?.as_u64().ok_or_else(|| bad(what, format!("{:?} is not a count", key)))
}

fn f64_field(v: &Value, key: &str, what: &'static str) -> Result<f64, FormatError> {
    field(v, key, what)?.as_f64().ok_or_else(|| bad(what, format!("{:?} is not a number", key)))
}

fn array<'a>(v: &'a Value, key: &str, what: &'static str) -> Result<&'a Vec<Value>, FormatError> {
    field(v, key, what)?.as_array().ok_or_else(|| bad(what, format!("{:?} is not an array", key)))
}

pub fn triple_fields(t: &Triple, m: &mut Map<String, Value>) {
    m.insert("p".into(), int_value(&t.p));
    m.insert("q1".into(), int_value(&t.q1));
    m.insert("q2".into(), int_value(&t.q2));
}

pub fn triple(t: &Triple) -> Value {
    let mut m = Map::new();
    triple_fields(t, &mut m);
    Value::Object(m)
}

pub fn parse_triple(v: &Value) -> Result<Triple, FormatError> {
    Ok(Triple {
        p: parse_bigint(field(v, "p", "triple")?)?,
        q1: parse_bigint(field(v, "q1", "triple")?)?,
        q2: parse_bigint(field(v, "q2", "triple")?)?,
    })
}

pub fn poly(f: &BiPoly) -> Value {
    let terms: Vec<Value> = f.terms().map(|(i, j, c)| json!({ "i": i, "j": j, "coeff": rat(c) })).collect();
    json!({ "terms": terms })
}

pub fn parse_poly(v: &Value) -> Result<BiPoly, FormatError> {
    let mut f = BiPoly::zero();
    for t in array(v, "terms", "polynomial")? {
        let i = u32::try_from(u64_field(t, "i", "polynomial term")?).map_err(|_| bad("polynomial term", "exponent"))?;
        let j = u32::try_from(u64_field(t, "j", "polynomial term")?).map_err(|_| bad("polynomial term", "exponent"))?;
        f.add_term(i, j, parse_rat(field(t, "coeff", "polynomial term")?)?);
    }
    Ok(f)
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::AlmostPositive => "AlmostPositive",
        Verdict::NotAlmostPositive => "NotAlmostPositive",
    }
}

pub fn parse_verdict(s: &str) -> Result<Verdict, FormatError> {
    match s {
        "AlmostPositive" => Ok(Verdict::AlmostPositive),
        "NotAlmostPositive" => Ok(Verdict::NotAlmostPositive),
        _ => Err(bad("verdict", s)),
    }
}

pub fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::Interval => "interval",
        Branch::Dominant => "dominant",
        Branch::Exceptional => "exceptional",
        Branch::None => "none",
    }
}

pub fn parse_branch(s: &str) -> Result<Branch, FormatError> {
    match s {
        "interval" => Ok(Branch::Interval),
        "dominant" => Ok(Branch::Dominant),
        "exceptional" => Ok(Branch::Exceptional),
        "none" => Ok(Branch::None),
        _ => Err(bad("branch", s)),
    }
}

pub fn provenance_name(p: Provenance) -> &'static str {
    match p {
        Provenance::TheoremMain2 => "theorem",
        Provenance::PolynomialCriterion => "polynomial-criterion",
        Provenance::TabulatedSpecialCase => "tabulated",
    }
}

pub fn parse_provenance(s: &str) -> Result<Provenance, FormatError> {
    match s {
        "theorem" => Ok(Provenance::TheoremMain2),
        "polynomial-criterion" => Ok(Provenance::PolynomialCriterion),
        "tabulated" => Ok(Provenance::TabulatedSpecialCase),
        _ => Err(bad("provenance", s)),
    }
}

fn point(p: &(Rational, Rational)) -> Value {
    json!({ "x": rat(&p.0), "y": rat(&p.1) })
}

fn parse_point(v: &Value) -> Result<(Rational, Rational), FormatError> {
    Ok((parse_rat(field(v, "x", "point")?)?, parse_rat(field(v, "y", "point")?)?))
}

fn parse_edge(s: &str) -> Result<Edge, FormatError> {
    Edge::ALL.into_iter().find(|e| e.name() == s).ok_or_else(|| bad("edge", s))
}

fn rat_box(b: &RatBox) -> Value {
    json!([rat(&b.x_lo), rat(&b.x_hi), rat(&b.y_lo), rat(&b.y_hi)])
}

fn parse_box(v: &Value) -> Result<RatBox, FormatError> {
    let a = v.as_array().filter(|a| a.len() == 4).ok_or_else(|| bad("box", v.to_string()))?;
    let r = |k: usize| parse_rat(&a[k]);
    RatBox::new(r(0)?, r(1)?, r(2)?, r(3)?).map_err(|e| bad("box", e.to_string()))
}

pub fn sign_verdict_name(v: SignVerdict) -> &'static str {
    match v {
        SignVerdict::Nonpositive => "nonpositive",
        SignVerdict::Positive => "positive",
    }
}

pub fn certificate(c: &SignCertificate) -> Value {
    let edges: Vec<Value> = c
        .edges
        .iter()
        .map(|e| match &e.verdict {
            UniVerdict::AllNonpositive => json!({ "edge": e.edge.name(), "verdict": "nonpositive" }),
            UniVerdict::PositiveWitness(t) => json!({ "edge": e.edge.name(), "verdict": "positive", "witness": rat(t) }),
        })
        .collect();
    let leaves: Vec<Value> = c
        .leaves
        .iter()
        .map(|l| match l.kind {
            LeafKind::Bernstein => json!({ "box": rat_box(&l.bx), "kind": "bernstein" }),
            LeafKind::Monotone(e) => json!({ "box": rat_box(&l.bx), "kind": "monotone", "edge": e.name() }),
        })
        .collect();
    let crit: Vec<Value> = c
        .critical_points
        .iter()
        .map(|p| {
            json!({
                "x_lo": rat(&p.x_lo),
                "x_hi": rat(&p.x_hi),
                "x_approx": p.x_approx,
                "y_approx": p.y_approx,
                "sign": p.sign,
                "source": match p.source {
                    CriticalSource::Isolated => "isolated",
                    CriticalSource::Curve => "curve",
                },
            })
        })
        .collect();
    json!({
        "verdict": sign_verdict_name(c.verdict),
        "conclusive": c.is_conclusive(),
        "budget_exhausted": c.budget_exhausted,
        "witness": c.witness.as_ref().map(point),
        "edges": edges,
        "leaves": leaves,
        "critical_points": crit,
        "limitations": c.limitations,
    })
}

pub fn parse_certificate(v: &Value) -> Result<SignCertificate, FormatError> {
    const W: &str = "certificate";
    let verdict = match str_field(v, "verdict", W)? {
        "nonpositive" => SignVerdict::Nonpositive,
        "positive" => SignVerdict::Positive,
        s => return Err(bad(W, format!("verdict {:?}", s))),
    };
    let witness = match field(v, "witness", W)? {
        Value::Null => None,
        w => Some(parse_point(w)?),
    };
    let mut edges = Vec::new();
    for e in array(v, "edges", W)? {
        let edge = parse_edge(str_field(e, "edge", "edge record")?)?;
        let verdict = match str_field(e, "verdict", "edge record")? {
            "nonpositive" => UniVerdict::AllNonpositive,
            "positive" => UniVerdict::PositiveWitness(parse_rat(field(e, "witness", "edge record")?)?),
            s => return Err(bad("edge record", s)),
        };
        edges.push(EdgeRecord { edge, verdict });
    }
    let mut leaves = Vec::new();
    for l in array(v, "leaves", W)? {
        let bx = parse_box(field(l, "box", "leaf")?)?;
        let kind = match str_field(l, "kind", "leaf")? {
            "bernstein" => LeafKind::Bernstein,
            "monotone" => LeafKind::Monotone(parse_edge(str_field(l, "edge", "leaf")?)?),
            s => return Err(bad("leaf", s)),
        };
        leaves.push(Leaf { bx, kind });
    }
    let mut critical_points = Vec::new();
    for p in array(v, "critical_points", W)? {
        const P: &str = "critical point";
        let sign = field(p, "sign", P)?.as_i64().and_then(|s| i8::try_from(s).ok()).ok_or_else(|| bad(P, "sign"))?;
        let source = match str_field(p, "source", P)? {
            "isolated" => CriticalSource::Isolated,
            "curve" => CriticalSource::Curve,
            s => return Err(bad(P, s)),
        };
        critical_points.push(CriticalPoint {
            x_lo: parse_rat(field(p, "x_lo", P)?)?,
            x_hi: parse_rat(field(p, "x_hi", P)?)?,
            x_approx: f64_field(p, "x_approx", P)?,
            y_approx: f64_field(p, "y_approx", P)?,
            sign,
            source,
        });
    }
    let limitations = array(v, "limitations", W)?
        .iter()
        .map(|s| s.as_str().map(String::from).ok_or_else(|| bad(W, "limitation")))
        .collect::<Result<_, _>>()?;
    let budget_exhausted = field(v, "budget_exhausted", W)?.as_bool().ok_or_else(|| bad(W, "budget_exhausted"))?;
    Ok(SignCertificate { verdict, witness, edges, leaves, critical_points, limitations, budget_exhausted })
}

/// One scan line: `{"p","q1","q2","theorem","poly","agree","witness"?, ...}`.
pub fn scan_row(r: &ScanRow) -> Value {
    let mut m = Map::new();
    triple_fields(&r.triple, &mut m);
    m.insert("theorem".into(), json!(verdict_name(r.theorem)));
    m.insert("poly".into(), r.poly.map_or(Value::Null, |v| json!(verdict_name(v))));
    m.insert("agree".into(), json!(r.agree()));
    if let Some(w) = &r.witness {
        m.insert("witness".into(), point(w));
    }
    m.insert("branch".into(), json!(branch_name(r.branch)));
    m.insert("provenance".into(), json!(provenance_name(r.provenance)));
    m.insert("critical_points".into(), json!(r.critical_points));
    m.insert("leaves".into(), json!(r.leaves));
    Value::Object(m)
}

pub fn parse_scan_row(v: &Value) -> Result<ScanRow, FormatError> {
    const W: &str = "scan row";
    let poly = match field(v, "poly", W)? {
        Value::Null => None,
        Value::String(s) => Some(parse_verdict(s)?),
        o => return Err(bad(W, o.to_string())),
    };
    let row = ScanRow {
        triple: parse_triple(v)?,
        theorem: parse_verdict(str_field(v, "theorem", W)?)?,
        branch: parse_branch(str_field(v, "branch", W)?)?,
        poly,
        provenance: parse_provenance(str_field(v, "provenance", W)?)?,
        witness: v.get("witness").map(parse_point).transpose()?,
        critical_points: u64_field(v, "critical_points", W)? as usize,
        leaves: u64_field(v, "leaves", W)? as usize,
    };
    if field(v, "agree", W)?.as_bool() != Some(row.agree()) {
        return Err(bad(W, "agree flag contradicts the verdicts"));
    }
    Ok(row)
}

pub fn action(a: &TorusAction) -> Value {
    json!([a.p, a.q1, a.q2, a.s1, a.s2])
}

pub fn parse_action(v: &Value) -> Result<TorusAction, FormatError> {
    let a: Vec<i64> = v
        .as_array()
        .filter(|a| a.len() == 5)
        .and_then(|a| a.iter().map(Value::as_i64).collect())
        .ok_or_else(|| bad("torus action", v.to_string()))?;
    Ok(TorusAction::new(a[0], a[1], a[2], a[3], a[4]))
}
