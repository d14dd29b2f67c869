use std::fmt::Write as _;

use apclab_core::boxsign::{decide_nonpositive, Budget, SignCertificate, SignVerdict};
use apclab_core::eschenburg::{
    build_f, build_g, classify_polynomial, classify_theorem, count_inadmissible, enumerate_admissible, is_admissible,
    scan_row, table_audit, Branch, Classification, Detail, DiscrepancyKind, EschenburgError, ScanReport, ScanRow,
    TableDiscrepancy, Triple, Verdict, TABULATED,
};
use apclab_core::exactpoly::rational::{to_f64, Rational};
use apclab_core::exactpoly::RatBox;
use apclab_core::geomcheck::{self, grid_point, is_excluded, w0_plane_110, GeomError, GridPoint, MetricParams};
use apclab_core::topology::{self, InhomogeneityCertificate};
use apclab_core::torus::{self, Enumeration, TorusAction, CANONICAL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::json as js;
use crate::{pool, thread_count, CliError, Command, Format, Method, Outcome, EXIT_BUDGET, EXIT_MISMATCH, EXIT_OK};

/// Residual tolerance for constructed planes.
pub const PLANE_TOL: f64 = 1e-8;
/// Residual tolerance for the explicit `(1, 1, 0)` plane family.
pub const W0_TOL: f64 = 1e-9;
pub const A0_TOL: f64 = 1e-10;
pub const W0_SAMPLES: usize = 100;

pub fn dispatch(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Classify { triple, method, budget, json } => {
            classify(&triple.triple(), *method, Budget::with_depth(budget.budget), *json)
        }
        Command::Certify { triple, budget } => certify(&triple.triple(), Budget::with_depth(budget.budget)),
        Command::Scan { bound, budget, threads, format } => {
            let report = parallel_scan(*bound, Budget::with_depth(budget.budget), thread_count(threads.threads)?)?;
            Ok(scan_outcome(&report, *format))
        }
        Command::Invariants { n, triple, json } => invariants(*n, &triple.triple(), *json),
        Command::Inhom { n, triple, bound, json } => inhom(*n, &triple.triple(), *bound, *json),
        Command::InhomSearch { n, count, json } => Ok(inhom_search(*n, *count as usize, *json)),
        Command::TorusEnumerate { bound, threads, json } => {
            let e = parallel_torus(*bound, thread_count(threads.threads)?)?;
            Ok(torus_outcome(&e, *json))
        }
        Command::VerifyGeometry { triple, grid, seed, n, threads, json } => {
            let rep = geometry_report(&triple.triple(), *grid, *seed, *n as usize, thread_count(threads.threads)?)?;
            Ok(geometry_outcome(&rep, *json))
        }
        Command::VerifyA0 { json } => Ok(verify_a0(*json)),
        Command::Poly { triple, json, dump_grid } => Ok(match dump_grid {
            Some(g) => dump_grid_csv(&triple.triple(), *g),
            None => poly(&triple.triple(), *json),
        }),
    }
}

fn line(v: &Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

fn is_tabulated(t: &Triple) -> bool {
    t.to_i64().is_some_and(|v| TABULATED.iter().any(|(k, _)| *k == v))
}

// classify

fn classify(t: &Triple, method: Method, budget: Budget, as_json: bool) -> Result<Outcome, CliError> {
    let theorem = match method {
        Method::Theorem | Method::Both => Some(classify_theorem(t).map_err(usage)?),
        Method::Poly => None,
    };
    let poly = match method {
        Method::Poly | Method::Both => match classify_polynomial(t, budget) {
            Ok(c) => Some(Ok(c)),
            Err(EschenburgError::BudgetExhausted(_)) => Some(Err(())),
            Err(e) => return Err(usage(e)),
        },
        Method::Theorem => None,
    };
    let agree = match (&theorem, &poly) {
        (Some(a), Some(Ok(b))) => Some(a.verdict == b.verdict),
        _ => None,
    };
    let code = if agree == Some(false) {
        EXIT_MISMATCH
    } else if matches!(poly, Some(Err(()))) {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    let body = if as_json {
        let mut m = Map::new();
        js::triple_fields(t, &mut m);
        if let Some(c) = &theorem {
            let branch = match c.detail {
                Detail::Theorem(b) => b,
                _ => Branch::None,
            };
            m.insert("theorem".into(), json!({ "verdict": js::verdict_name(c.verdict), "branch": js::branch_name(branch) }));
        }
        if let Some(p) = &poly {
            m.insert("poly".into(), poly_json(p.as_ref().ok()));
        }
        m.insert("agree".into(), agree.map_or(Value::Null, Value::Bool));
        line(&Value::Object(m))
    } else {
        let mut s = format!("triple {}\n", t);
        if let Some(c) = &theorem {
            let b = match c.detail {
                Detail::Theorem(b) => js::branch_name(b),
                _ => "none",
            };
            let _ = writeln!(s, "theorem: {} [branch {}]", js::verdict_name(c.verdict), b);
        }
        match &poly {
            Some(Ok(c)) => {
                let _ = writeln!(s, "poly:    {} [{}]", js::verdict_name(c.verdict), poly_detail(c));
            }
            Some(Err(())) => s.push_str("poly:    undecided [subdivision budget exhausted]\n"),
            None => {}
        }
        if let Some(a) = agree {
            let _ = writeln!(s, "agree:   {}", if a { "yes" } else { "NO" });
        }
        s
    };
    Ok(Outcome::new(body, code))
}

fn poly_json(c: Option<&Classification>) -> Value {
    let Some(c) = c else {
        return json!({ "verdict": null, "budget_exhausted": true });
    };
    let mut m = Map::new();
    m.insert("verdict".into(), json!(js::verdict_name(c.verdict)));
    m.insert("provenance".into(), json!(js::provenance_name(c.provenance)));
    if let Detail::Certificate(cert) = &c.detail {
        if let Some((x, y)) = &cert.witness {
            m.insert("witness".into(), json!({ "x": js::rat(x), "y": js::rat(y) }));
        }
        m.insert("leaves".into(), json!(cert.leaves.len()));
        m.insert("critical_points".into(), json!(cert.critical_points.len()));
    }
    Value::Object(m)
}

fn poly_detail(c: &Classification) -> String {
    match &c.detail {
        Detail::Certificate(cert) => match &cert.witness {
            Some((x, y)) => format!("f({}, {}) > 0", x, y),
            None => format!("f <= 0 on [0,1]^2; {} leaves, {} critical points", cert.leaves.len(), cert.critical_points.len()),
        },
        Detail::Tabulated => "tabulated special case".into(),
        Detail::Theorem(_) => "theorem".into(),
    }
}

// certify

/// The sign certificate of `f` on the unit square, with the theorem's claim
/// when the triple is classifiable.
pub fn certify_value(t: &Triple, budget: Budget) -> (Value, SignCertificate, Option<Verdict>) {
    let f = build_f(t);
    let cert = decide_nonpositive(&f, &RatBox::unit(), budget);
    let claim = classify_theorem(t).ok().map(|c| c.verdict);
    let mut m = Map::new();
    js::triple_fields(t, &mut m);
    m.insert("claim".into(), claim.map_or(Value::Null, |v| json!(js::verdict_name(v))));
    m.insert("f".into(), js::poly(&f));
    if let Some((x, y)) = &cert.witness {
        m.insert("witness_value".into(), js::rat(&f.eval(x, y)));
    }
    m.insert("certificate".into(), js::certificate(&cert));
    (Value::Object(m), cert, claim)
}

fn certify(t: &Triple, budget: Budget) -> Result<Outcome, CliError> {
    let (v, cert, claim) = certify_value(t, budget);
    let code = if cert.budget_exhausted {
        EXIT_BUDGET
    } else {
        match claim {
            Some(c) if !is_tabulated(t) => {
                let nonpositive = cert.verdict == SignVerdict::Nonpositive;
                if nonpositive == (c == Verdict::AlmostPositive) {
                    EXIT_OK
                } else {
                    EXIT_MISMATCH
                }
            }
            _ => EXIT_OK,
        }
    };
    Ok(Outcome::new(line(&v), code))
}

// scan

/// Scans every admissible triple with entries in `[-bound, bound]` on a pool of
/// `threads` workers. Rows come back in `(p, q1, q2)` order whatever the
/// schedule.
pub fn parallel_scan(bound: i64, budget: Budget, threads: usize) -> Result<ScanReport, CliError> {
    let triples = enumerate_admissible(bound);
    let rows: Vec<ScanRow> = pool(threads)?.install(|| triples.par_iter().map(|t| scan_row(t, budget)).collect());
    Ok(ScanReport { bound, rows, skipped_inadmissible: count_inadmissible(bound), table_discrepancies: table_audit() })
}

pub fn scan_exit_code(r: &ScanReport) -> i32 {
    if r.rows.iter().any(|row| row.poly.is_some() && !row.agree()) {
        EXIT_MISMATCH
    } else if r.rows.iter().any(|row| row.poly.is_none()) {
        EXIT_BUDGET
    } else {
        EXIT_OK
    }
}

pub fn discrepancy_json(d: &TableDiscrepancy) -> Value {
    match &d.kind {
        DiscrepancyKind::Unparseable(msg) => {
            json!({ "i": d.i, "j": d.j, "entry": d.printed, "kind": "unparseable", "detail": msg })
        }
        DiscrepancyKind::ValueMismatch { triple, printed, derived } => json!({
            "i": d.i,
            "j": d.j,
            "entry": d.printed,
            "kind": "value-mismatch",
            "triple": [triple.0, triple.1, triple.2],
            "printed": js::rat(printed),
            "derived": js::rat(derived),
        }),
    }
}

pub fn scan_report_json(r: &ScanReport) -> Value {
    let mismatches = r.rows.iter().filter(|row| row.poly.is_some() && !row.agree()).count();
    let undecided = r.rows.iter().filter(|row| row.poly.is_none()).count();
    json!({
        "bound": r.bound,
        "admissible": r.rows.len(),
        "skipped_inadmissible": r.skipped_inadmissible,
        "mismatches": mismatches,
        "undecided": undecided,
        "table_discrepancies": r.table_discrepancies.iter().map(discrepancy_json).collect::<Vec<_>>(),
        "rows": r.rows.iter().map(js::scan_row).collect::<Vec<_>>(),
    })
}

pub fn scan_csv(r: &ScanReport) -> String {
    let mut s = String::from("p,q1,q2,theorem,poly,agree\n");
    for row in &r.rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            row.triple.p,
            row.triple.q1,
            row.triple.q2,
            js::verdict_name(row.theorem),
            row.poly.map_or("", js::verdict_name),
            row.agree()
        );
    }
    s
}

fn scan_outcome(r: &ScanReport, format: Format) -> Outcome {
    let mismatches = r.rows.iter().filter(|row| row.poly.is_some() && !row.agree()).count();
    let undecided = r.rows.iter().filter(|row| row.poly.is_none()).count();
    let summary = format!(
        "bound {}: {} admissible triples ({} inadmissible skipped), {} mismatches, {} undecided, {} table discrepancies",
        r.bound,
        r.rows.len(),
        r.skipped_inadmissible,
        mismatches,
        undecided,
        r.table_discrepancies.len()
    );
    let body = match format {
        Format::Jsonl => r.rows.iter().map(|row| line(&js::scan_row(row))).collect(),
        Format::Csv => scan_csv(r),
        Format::Json => line(&scan_report_json(r)),
        Format::Text => {
            let mut s = summary.clone();
            s.push('\n');
            for row in r.rows.iter().filter(|row| !row.agree()) {
                let _ = writeln!(
                    s,
                    "  {}: theorem {}, poly {}",
                    row.triple,
                    js::verdict_name(row.theorem),
                    row.poly.map_or("undecided", js::verdict_name)
                );
            }
            s
        }
    };
    Outcome::new(body, scan_exit_code(r)).note(summary)
}

// topology

fn require_admissible(t: &Triple) -> Result<(), CliError> {
    if is_admissible(t) {
        Ok(())
    } else {
        Err(usage(EschenburgError::Inadmissible(t.clone())))
    }
}

fn invariants(n: u32, t: &Triple, as_json: bool) -> Result<Outcome, CliError> {
    require_admissible(t)?;
    let inv = topology::invariants(n, t).map_err(usage)?;
    let body = if as_json {
        let mut m = Map::new();
        js::triple_fields(t, &mut m);
        m.insert("n".into(), json!(inv.n));
        m.insert("dim".into(), json!(inv.dim));
        m.insert("ell".into(), js::bigint(&inv.ell));
        m.insert("h2n_order".into(), inv.h2n_order.as_ref().map_or(Value::Null, js::bigint));
        line(&Value::Object(m))
    } else {
        let h = match &inv.h2n_order {
            Some(o) => format!("H^{}: Z/{}", 2 * n, o),
            None => format!("H^{}: ell = 0, no finite order", 2 * n),
        };
        format!("triple {}, n = {}\ndimension: {}\nell: {}\n{}\n", t, n, inv.dim, inv.ell, h)
    };
    Ok(Outcome::new(body, EXIT_OK))
}

pub fn inhom_json(t: &Triple, c: &InhomogeneityCertificate) -> Value {
    let mut m = Map::new();
    js::triple_fields(t, &mut m);
    m.insert("kind".into(), json!(c.kind()));
    m.insert("conclusive".into(), json!(c.is_conclusive()));
    match c {
        InhomogeneityCertificate::Parity { n, ell } => {
            m.insert("n".into(), json!(n));
            m.insert("ell".into(), js::bigint(ell));
        }
        InhomogeneityCertificate::PrimeMod4 { n, prime, method } => {
            m.insert("n".into(), json!(n));
            m.insert("prime".into(), js::bigint(prime));
            m.insert("method".into(), json!(method.name()));
        }
        InhomogeneityCertificate::BoundedSearchOnly { n, ell, bound, homogeneous_match } => {
            m.insert("n".into(), json!(n));
            m.insert("ell".into(), js::bigint(ell));
            m.insert("bound".into(), json!(bound));
            m.insert("homogeneous_match".into(), homogeneous_match.map_or(Value::Null, |(a, b)| json!([a, b])));
        }
    }
    Value::Object(m)
}

fn inhom(n: u32, t: &Triple, bound: i64, as_json: bool) -> Result<Outcome, CliError> {
    let c = topology::inhomogeneity_certificate(n, t, bound).map_err(usage)?;
    let body = if as_json {
        line(&inhom_json(t, &c))
    } else {
        match &c {
            InhomogeneityCertificate::Parity { ell, .. } => {
                format!("strongly inhomogeneous: n = {} even and ell = {} even\n", n, ell)
            }
            InhomogeneityCertificate::PrimeMod4 { prime, method, .. } => format!(
                "strongly inhomogeneous: |ell| = {} is a prime = 3 mod 4 ({}{})\n",
                prime,
                method.name(),
                if method.is_proof() { "" } else { ", not a proof" }
            ),
            InhomogeneityCertificate::BoundedSearchOnly { ell, bound, homogeneous_match, .. } => match homogeneous_match {
                Some((a, b)) => format!(
                    "no obstruction: ell = {}; homogeneous model (0, {}, {}) has the same |ell| (search bound {})\n",
                    ell, a, b, bound
                ),
                None => format!("no obstruction: ell = {}; no homogeneous model with |r| <= {} matches |ell|\n", ell, bound),
            },
        }
    };
    Ok(Outcome::new(body, EXIT_OK))
}

fn inhom_search(n: u32, count: usize, as_json: bool) -> Outcome {
    let hits = topology::prime_search(n, count);
    let body = if as_json {
        let rows: Vec<Value> = hits
            .iter()
            .map(|h| json!({ "k": h.k, "p": h.p, "q1": 1, "q2": 1, "prime": h.prime, "method": h.method.name() }))
            .collect();
        line(&json!({ "n": n, "hits": rows }))
    } else {
        let mut s = String::new();
        for h in &hits {
            let _ = writeln!(s, "k = {}: ({}, 1, 1) has |ell| = {}, prime [{}]", h.k, h.p, h.prime, h.method.name());
        }
        s
    };
    Outcome::new(body, EXIT_OK)
}

// torus

pub fn parallel_torus(bound: i64, threads: usize) -> Result<Enumeration, CliError> {
    let ps: Vec<i64> = (-bound..=bound).collect();
    let found: Vec<Vec<TorusAction>> =
        pool(threads)?.install(|| ps.par_iter().map(|&p| torus::free_actions_with_p(p, bound)).collect());
    let all: Vec<TorusAction> = found.into_iter().flatten().collect();
    Ok(torus::summarize(bound, &all))
}

pub fn torus_matches_known(e: &Enumeration) -> bool {
    e.unexpected.is_empty() && e.canonical.len() == CANONICAL.len() && CANONICAL.iter().all(|c| e.canonical.contains(c))
}

pub fn torus_json(e: &Enumeration) -> Value {
    json!({
        "bound": e.bound,
        "survivors": e.survivors,
        "canonical": e.canonical.iter().map(js::action).collect::<Vec<_>>(),
        "unexpected": e.unexpected.iter().map(js::action).collect::<Vec<_>>(),
        "ps_constraint_holds": e.ps_constraint_holds,
        "matches_known": torus_matches_known(e),
    })
}

fn torus_outcome(e: &Enumeration, as_json: bool) -> Outcome {
    let ok = torus_matches_known(e) && e.ps_constraint_holds;
    let body = if as_json {
        line(&torus_json(e))
    } else {
        let mut s = format!("bound {}: {} free effective actions\n", e.bound, e.survivors);
        for c in &e.canonical {
            let _ = writeln!(s, "  canonical {}", c);
        }
        for c in &e.unexpected {
            let _ = writeln!(s, "  UNEXPECTED {}", c);
        }
        let _ = writeln!(s, "p s_i in {{0, 2, -2}}: {}", e.ps_constraint_holds);
        s
    };
    Outcome::new(body, if ok { EXIT_OK } else { EXIT_MISMATCH })
}

// geometry

#[derive(Debug, Clone, PartialEq)]
pub struct W0Sample {
    pub t: f64,
    pub r: f64,
    pub residual: Result<f64, GeomError>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeometryReport {
    pub triple: Triple,
    pub grid: u32,
    pub seed: u64,
    pub n: usize,
    pub params: MetricParams,
    pub points: Vec<GridPoint>,
    pub w0: Vec<W0Sample>,
}

impl GeometryReport {
    pub fn constructed(&self) -> usize {
        self.points.iter().filter(|p| p.constructed).count()
    }

    pub fn rejected(&self) -> usize {
        self.points.iter().filter(|p| matches!(p.error, Some(GeomError::NegativeF(_)))).count()
    }

    pub fn singular(&self) -> usize {
        self.points.iter().filter(|p| matches!(p.error, Some(GeomError::VanishingDenominator(_)))).count()
    }

    pub fn inconsistent(&self) -> Vec<&GridPoint> {
        self.points.iter().filter(|p| !p.consistent(PLANE_TOL)).collect()
    }

    /// Largest construction, horizontality or metric-switch residual.
    pub fn max_plane_residual(&self) -> f64 {
        self.points
            .iter()
            .flat_map(|p| {
                [p.kerin_max, p.horizontality_max, p.switch_max.map(|s| s.0), p.switch_max.map(|s| s.1)].into_iter().flatten()
            })
            .fold(0.0, f64::max)
    }

    pub fn w0_max(&self) -> f64 {
        self.w0.iter().map(|s| s.residual.as_ref().copied().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.inconsistent().is_empty() && self.w0_max() <= W0_TOL
    }
}

/// Seeded frame parameters strictly inside the frame square.
pub fn seeded_frames(seed: u64, count: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hi = std::f64::consts::FRAC_PI_2 - 0.02;
    (0..count).map(|_| (rng.gen_range(0.02..hi), rng.gen_range(0.02..hi))).collect()
}

pub fn geometry_report(t: &Triple, grid: u32, seed: u64, n: usize, threads: usize) -> Result<GeometryReport, CliError> {
    require_admissible(t)?;
    if is_excluded(t) {
        return Err(usage(GeomError::Excluded(t.clone())));
    }
    let params = MetricParams::default();
    let f = build_f(t);
    let den = i64::from(grid) + 1;
    let cells: Vec<(i64, i64)> = (1..=den - 1).flat_map(|i| (1..=den - 1).map(move |j| (i, j))).collect();
    let frames = seeded_frames(seed, W0_SAMPLES);
    let (points, w0) = pool(threads)?.install(|| {
        let points: Vec<GridPoint> = cells
            .par_iter()
            .map(|&(i, j)| grid_point(t, &f, Rational::new(i.into(), den.into()), Rational::new(j.into(), den.into()), &params, n))
            .collect();
        let w0: Vec<W0Sample> = frames
            .par_iter()
            .map(|&(tt, r)| W0Sample { t: tt, r, residual: w0_plane_110(tt, r, &params, n).map(|rep| rep.max_residual) })
            .collect();
        (points, w0)
    });
    Ok(GeometryReport { triple: t.clone(), grid, seed, n, params, points, w0 })
}

fn opt(v: Option<f64>) -> Value {
    v.map_or(Value::Null, |x| json!(x))
}

pub fn geometry_json(rep: &GeometryReport) -> Value {
    let points: Vec<Value> = rep
        .points
        .iter()
        .map(|p| {
            json!({
                "x": js::rat(&p.x),
                "y": js::rat(&p.y),
                "f_sign": p.f_sign,
                "constructed": p.constructed,
                "error": p.error.as_ref().map(|e| e.to_string()),
                "kerin_max": opt(p.kerin_max),
                "horizontality_max": opt(p.horizontality_max),
                "switch_to_one_step": opt(p.switch_max.map(|s| s.0)),
                "switch_to_two_step": opt(p.switch_max.map(|s| s.1)),
                "consistent": p.consistent(PLANE_TOL),
            })
        })
        .collect();
    let w0: Vec<Value> = rep
        .w0
        .iter()
        .map(|s| match &s.residual {
            Ok(v) => json!({ "t": s.t, "r": s.r, "max_residual": v }),
            Err(e) => json!({ "t": s.t, "r": s.r, "max_residual": null, "error": e.to_string() }),
        })
        .collect();
    let mut m = Map::new();
    js::triple_fields(&rep.triple, &mut m);
    m.insert("n".into(), json!(rep.n));
    m.insert("grid".into(), json!(rep.grid));
    m.insert("seed".into(), json!(rep.seed));
    m.insert("lambda1".into(), json!(rep.params.lambda1));
    m.insert("lambda2".into(), json!(rep.params.lambda2));
    m.insert(
        "summary".into(),
        json!({
            "points": rep.points.len(),
            "constructed": rep.constructed(),
            "rejected_negative_f": rep.rejected(),
            "vanishing_denominator": rep.singular(),
            "inconsistent": rep.inconsistent().len(),
            "max_plane_residual": rep.max_plane_residual(),
            "w0_max_residual": rep.w0_max(),
            "passed": rep.passed(),
        }),
    );
    m.insert("points".into(), Value::Array(points));
    m.insert("w0".into(), Value::Array(w0));
    Value::Object(m)
}

fn geometry_outcome(rep: &GeometryReport, as_json: bool) -> Outcome {
    let body = if as_json {
        line(&geometry_json(rep))
    } else {
        let mut s = format!("triple {}, n = {}, {}x{} grid, seed {}\n", rep.triple, rep.n, rep.grid, rep.grid, rep.seed);
        let _ = writeln!(
            s,
            "constructed {} (f >= 0), rejected {} (f < 0), singular {}",
            rep.constructed(),
            rep.rejected(),
            rep.singular()
        );
        let _ = writeln!(s, "max plane residual {:.3e} (tolerance {:e})", rep.max_plane_residual(), PLANE_TOL);
        let _ = writeln!(s, "(1,1,0) plane family: max residual {:.3e} over {} frames", rep.w0_max(), rep.w0.len());
        for p in rep.inconsistent() {
            let _ = writeln!(s, "  INCONSISTENT at ({}, {}): f sign {}, {:?}", p.x, p.y, p.f_sign, p.error);
        }
        let _ = writeln!(s, "{}", if rep.passed() { "PASS" } else { "FAIL" });
        s
    };
    Outcome::new(body, if rep.passed() { EXIT_OK } else { EXIT_MISMATCH })
}

/// The `A0` check against its expected values.
pub fn a0_passes(rep: &geomcheck::A0Report) -> bool {
    let s2 = std::f64::consts::SQRT_2;
    let mut re = rep.re_squared;
    re.sort_by(f64::total_cmp);
    rep.solution_error <= A0_TOL
        && rep.odd_part <= A0_TOL
        && (rep.im_candidates[0] - s2).abs() <= A0_TOL
        && (rep.im_candidates[1] - 1.5 * s2).abs() <= A0_TOL
        && (re[0] + 8.5).abs() <= A0_TOL
        && (re[1] + 4.0).abs() <= A0_TOL
        && rep.contradiction
}

fn verify_a0(as_json: bool) -> Outcome {
    let rep = geomcheck::quasipositive_a0_check();
    let ok = a0_passes(&rep);
    let body = if as_json {
        line(&json!({
            "solution_error": rep.solution_error,
            "odd_part": rep.odd_part,
            "quadratic": rep.quadratic,
            "im_candidates": rep.im_candidates,
            "re_squared": rep.re_squared,
            "contradiction": rep.contradiction,
            "passed": ok,
        }))
    } else {
        format!(
            "solved system vs printed solution: {:.3e}\nIm(y3) candidates: {:.12}, {:.12}\nRe(y3)^2: {:.12}, {:.12}\ncontradiction: {}\n{}\n",
            rep.solution_error,
            rep.im_candidates[0],
            rep.im_candidates[1],
            rep.re_squared[0],
            rep.re_squared[1],
            rep.contradiction,
            if ok { "PASS" } else { "FAIL" }
        )
    };
    Outcome::new(body, if ok { EXIT_OK } else { EXIT_MISMATCH })
}

// poly

fn poly(t: &Triple, as_json: bool) -> Outcome {
    let f = build_f(t);
    let g = build_g(t);
    let body = if as_json {
        let mut m = Map::new();
        js::triple_fields(t, &mut m);
        m.insert("f".into(), js::poly(&f));
        match &g {
            Ok(g) => m.insert("g".into(), js::poly(g)),
            Err(e) => m.insert("g".into(), json!({ "error": e.to_string() })),
        };
        line(&Value::Object(m))
    } else {
        let g = match &g {
            Ok(g) => g.to_string(),
            Err(e) => format!("undefined ({})", e),
        };
        format!("f = {}\ng = {}\n", f, g)
    };
    Outcome::new(body, EXIT_OK)
}

fn dump_grid_csv(t: &Triple, g: u32) -> Outcome {
    let f = build_f(t);
    let mut s = String::from("x,y,f,f_exact\n");
    let den = i64::from(g);
    for i in 0..=den {
        let x = Rational::new(i.into(), den.into());
        let col = f.subs_x(&x);
        for j in 0..=den {
            let y = Rational::new(j.into(), den.into());
            let v = col.eval(&y);
            let _ = writeln!(s, "{},{},{:e},{}", to_f64(&x), to_f64(&y), to_f64(&v), v);
        }
    }
    Outcome::new(s, EXIT_OK)
}
