use std::process::Command as Proc;

use apclab::commands::{certify_value, parallel_scan, scan_exit_code, scan_report_json};
use apclab::json;
use apclab::run_with;
use apclab_core::boxsign::{decide_nonpositive, Budget, SignVerdict};
use apclab_core::eschenburg::{build_f, enumerate_admissible, scan_row, Triple, Verdict};
use apclab_core::exactpoly::rational::{int, rat};
use apclab_core::exactpoly::{BiPoly, RatBox};
use proptest::prelude::*;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("apclab").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn bin() -> Proc {
    Proc::new(env!("CARGO_BIN_EXE_apclab"))
}

fn parse_line(s: &str) -> Value {
    serde_json::from_str(s.trim()).expect("valid JSON")
}

#[test]
fn classify_examples() {
    let (code, out, _) = run(&["classify", "2", "-5", "3", "--method", "both", "--json"]);
    assert_eq!(code, 0);
    let v = parse_line(&out);
    assert_eq!(v["theorem"]["verdict"], "AlmostPositive");
    assert_eq!(v["poly"]["verdict"], "AlmostPositive");
    assert_eq!(v["agree"], true);

    let (code, out, _) = run(&["classify", "1", "1", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("theorem: NotAlmostPositive [branch exceptional]"), "{}", out);

    let (code, out, _) = run(&["classify", "2", "-1", "1", "--method", "poly", "--json"]);
    assert_eq!(code, 0);
    let v = parse_line(&out);
    assert_eq!(v["poly"]["verdict"], "NotAlmostPositive");
    assert!(v.get("theorem").is_none());
    let w = &v["poly"]["witness"];
    let (x, y) = (json::parse_rat(&w["x"]).unwrap(), json::parse_rat(&w["y"]).unwrap());
    assert!(build_f(&Triple::new(2, -1, 1)).eval(&x, &y) > int(0));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["classify", "2", "x", "1"]).0, 2);
    assert_eq!(run(&["classify", "1", "0", "1"]).0, 2);
    assert_eq!(run(&["classify", "2", "-1"]).0, 2);
    assert_eq!(run(&["scan", "--bound", "0"]).0, 2);
    assert_eq!(run(&["scan", "--budget", "0"]).0, 2);
    assert_eq!(run(&["invariants", "1", "3", "1", "1"]).0, 2);
    assert_eq!(run(&["inhom-search", "--n", "6"]).0, 2);
    assert_eq!(run(&["verify-geometry", "0", "-1", "1"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify-geometry"));
}

#[test]
fn exit_code_mapping_for_scans() {
    let mut rep = parallel_scan(1, Budget::default(), 1).unwrap();
    assert_eq!(scan_exit_code(&rep), 0);
    // Exact elimination settles every triple even at depth 1.
    assert_eq!(run(&["classify", "3", "1", "3", "--method", "poly", "--budget", "1"]).0, 0);
    rep.rows[0].poly = None;
    assert_eq!(scan_exit_code(&rep), 3);
    let flipped = match rep.rows[1].theorem {
        Verdict::AlmostPositive => Verdict::NotAlmostPositive,
        Verdict::NotAlmostPositive => Verdict::AlmostPositive,
    };
    rep.rows[1].poly = Some(flipped);
    assert_eq!(scan_exit_code(&rep), 1);
}

#[test]
fn certify_writes_positive_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = run(&["certify", "2", "-1", "1", "--output", p]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"verdict\":\"positive\""));
    let v = parse_line(&text);
    let cert = json::parse_certificate(&v["certificate"]).unwrap();
    let f = json::parse_poly(&v["f"]).unwrap();
    assert_eq!(f, build_f(&Triple::new(2, -1, 1)));
    let (x, y) = cert.witness.clone().unwrap();
    assert_eq!(json::parse_rat(&v["witness_value"]).unwrap(), f.eval(&x, &y));
    assert!(f.eval(&x, &y) > int(0));
    assert_eq!(cert, decide_nonpositive(&f, &RatBox::unit(), Budget::default()));
}

#[test]
fn certificate_round_trips() {
    for (p, q1, q2) in [(1, -1, 1), (2, -5, 3), (3, 1, 3), (5, 2, 3), (2, -1, 1), (-3, -1, 1)] {
        let t = Triple::new(p, q1, q2);
        let (v, cert, _) = certify_value(&t, Budget::default());
        let text = v.to_string();
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
        assert_eq!(json::parse_certificate(&back["certificate"]).unwrap(), cert, "{}", t);
        assert_eq!(json::parse_triple(&back).unwrap(), t);
    }
}

#[test]
fn certify_flags_claim_mismatch_only_against_theorem() {
    // (2, -5, 3) is almost positive and f <= 0: consistent.
    assert_eq!(run(&["certify", "2", "-5", "3"]).0, 0);
    // Inadmissible triples are certified without a claim.
    let (code, out, _) = run(&["certify", "1", "0", "1"]);
    assert_eq!(code, 0);
    assert!(parse_line(&out)["claim"].is_null());
}

#[test]
fn scan_is_deterministic_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    assert_eq!(run(&["scan", "--bound", "2", "--threads", "1", "-o", a.to_str().unwrap()]).0, 0);
    assert_eq!(run(&["scan", "--bound", "2", "--threads", "3", "-o", b.to_str().unwrap()]).0, 0);
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert!(!x.is_empty());
    assert_eq!(x, y);
}

#[test]
fn scan_rows_parse_back_in_canonical_order() {
    let (code, out, err) = run(&["scan", "--bound", "3"]);
    assert_eq!(code, 0);
    assert!(err.contains("0 mismatches"), "{}", err);
    let rows: Vec<_> = out.lines().map(|l| json::parse_scan_row(&parse_line(l)).unwrap()).collect();
    let triples = enumerate_admissible(3);
    assert_eq!(rows.len(), triples.len());
    for (row, t) in rows.iter().zip(&triples) {
        assert_eq!(*row, scan_row(t, Budget::default()));
    }
    for l in out.lines() {
        let v = parse_line(l);
        for k in ["p", "q1", "q2", "theorem", "poly", "agree"] {
            assert!(v.get(k).is_some(), "{} missing in {}", k, l);
        }
    }
}

#[test]
fn scan_csv_and_json_formats() {
    let (code, out, _) = run(&["scan", "--bound", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("p,q1,q2,theorem,poly,agree"));
    assert_eq!(lines.count(), enumerate_admissible(2).len());

    let (code, out, _) = run(&["scan", "--bound", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v = parse_line(&out);
    let rep = parallel_scan(2, Budget::default(), 2).unwrap();
    assert_eq!(v, scan_report_json(&rep));
    assert_eq!(v["mismatches"], 0);
    assert_eq!(v["table_discrepancies"].as_array().unwrap().len(), 3);
}

#[test]
fn output_errors_name_the_path() {
    let (code, _, err) = run(&["verify-a0", "-o", "/nonexistent-dir/report.txt"]);
    assert_eq!(code, 2);
    assert!(err.contains("/nonexistent-dir/report.txt"), "{}", err);
}

#[test]
fn binary_exit_codes_and_thread_env() {
    let st = bin().args(["classify", "1", "1", "0"]).output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&st.stdout).contains("NotAlmostPositive"));
    let st = bin().args(["classify", "--method", "sideways", "1", "1", "0"]).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    let st = bin().args(["scan", "--bound", "1"]).env("APCLAB_THREADS", "zero").output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&st.stderr).contains("APCLAB_THREADS"));
    let st = bin().args(["scan", "--bound", "2"]).env("APCLAB_THREADS", "2").output().unwrap();
    assert_eq!(st.status.code(), Some(0));
    let (_, direct, _) = run(&["scan", "--bound", "2", "--threads", "1"]);
    assert_eq!(String::from_utf8(st.stdout).unwrap(), direct);
}

#[test]
fn topology_commands() {
    let (code, out, _) = run(&["invariants", "7", "13", "1", "1", "--json"]);
    assert_eq!(code, 0);
    let v = parse_line(&out);
    assert_eq!((v["dim"].as_u64(), v["ell"].as_str(), v["h2n_order"].as_str()), (Some(27), Some("83"), Some("83")));

    let (code, out, _) = run(&["inhom", "7", "13", "1", "1", "--json"]);
    assert_eq!(code, 0);
    let v = parse_line(&out);
    assert_eq!(v["kind"], "prime-mod-4");
    assert_eq!(v["prime"], "83");
    assert_eq!(v["conclusive"], true);

    let (_, out, _) = run(&["inhom", "6", "3", "1", "1", "--json"]);
    let v = parse_line(&out);
    assert_eq!(v["kind"], "bounded-search-only");
    assert_eq!(v["ell"], "11");

    let (code, out, _) = run(&["inhom-search", "--n", "7", "--count", "2", "--json"]);
    assert_eq!(code, 0);
    let v = parse_line(&out);
    assert_eq!(v["hits"][0]["p"], 13);
    assert_eq!(v["hits"][0]["prime"], 83);
}

#[test]
fn torus_command() {
    let (code, out, _) = run(&["torus-enumerate", "--bound", "3", "--json"]);
    assert_eq!(code, 0);
    let v = parse_line(&out);
    let canon: Vec<_> = v["canonical"].as_array().unwrap().iter().map(|a| json::parse_action(a).unwrap()).collect();
    assert_eq!(canon, apclab_core::torus::enumerate_free(3).canonical.into_iter().collect::<Vec<_>>());
    assert_eq!(v["matches_known"], true);
}

#[test]
fn geometry_commands() {
    let (code, out, _) = run(&["verify-geometry", "2", "-1", "1", "--grid", "6", "--json"]);
    assert_eq!(code, 0);
    let v = parse_line(&out);
    assert_eq!(v["summary"]["passed"], true);
    assert_eq!(v["points"].as_array().unwrap().len(), 36);
    assert!(v["summary"]["constructed"].as_u64().unwrap() > 0);
    assert!(v["summary"]["rejected_negative_f"].as_u64().unwrap() > 0);
    let f = build_f(&Triple::new(2, -1, 1));
    for p in v["points"].as_array().unwrap() {
        let (x, y) = (json::parse_rat(&p["x"]).unwrap(), json::parse_rat(&p["y"]).unwrap());
        let s = f.eval(&x, &y);
        assert_eq!(p["constructed"], s >= int(0), "({}, {})", x, y);
    }
    // Same seed, same bytes.
    assert_eq!(run(&["verify-geometry", "2", "-1", "1", "--grid", "6", "--json"]).1, out);

    let (code, out, _) = run(&["verify-a0", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(parse_line(&out)["contradiction"], true);
}

#[test]
fn poly_command() {
    let (code, out, _) = run(&["poly", "2", "-1", "1", "--json"]);
    assert_eq!(code, 0);
    let v = parse_line(&out);
    assert_eq!(json::parse_poly(&v["f"]).unwrap(), build_f(&Triple::new(2, -1, 1)));
    assert!(v["g"]["terms"].is_array());

    let (_, out, _) = run(&["poly", "1", "-1", "1"]);
    assert!(out.starts_with("f = -4*x^4*y^4 + 8*x^3*y^3 - 4*x^2*y^2\n"), "{}", out);
    assert!(out.contains("g = undefined"));

    let (code, out, _) = run(&["poly", "2", "-1", "1", "--dump-grid", "10"]);
    assert_eq!(code, 0);
    let lines: Vec<_> = out.lines().collect();
    assert_eq!(lines[0], "x,y,f,f_exact");
    assert_eq!(lines.len(), 1 + 11 * 11);
    let probe = lines.iter().find(|l| l.starts_with("0.3,0.1,")).unwrap();
    assert!(probe.ends_with(",2714/390625"), "{}", probe);
}

#[test]
fn sign_verdicts_survive_serialization() {
    let f = BiPoly::from_int_terms(&[(1, 1, 1), (0, 0, -1)]);
    let c = decide_nonpositive(&f, &RatBox::unit(), Budget::default());
    assert_eq!(c.verdict, SignVerdict::Nonpositive);
    let v = json::certificate(&c);
    assert_eq!(json::parse_certificate(&v).unwrap(), c);
}

proptest! {
    #[test]
    fn rationals_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = rat(n, d);
        let v = json::rat(&r);
        prop_assert!(v.as_str().unwrap().contains('/'));
        prop_assert_eq!(json::parse_rat(&v).unwrap(), r);
    }

    #[test]
    fn polynomials_round_trip(ts in prop::collection::vec((0u32..6, 0u32..6, -50i64..50, 1i64..20), 0..12)) {
        let mut f = BiPoly::zero();
        for (i, j, n, d) in ts {
            f.add_term(i, j, rat(n, d));
        }
        let text = json::poly(&f).to_string();
        let back = json::parse_poly(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }
}
