//! Command-line behavior: output formats, exit codes, and witness plumbing.

use zerograph_cli::suites::{p3_json, triangle_json};
use zerograph_cli::{run, EXIT_PASS, EXIT_REFUTED, EXIT_USAGE};

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let argv = std::iter::once("zerograph").chain(args.iter().copied());
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).expect("utf-8 output"))
}

fn write_temp(name: &str, body: &str) -> std::path::PathBuf {
    let path = std::env::temp_dir().join(format!("zerograph-test-{}-{name}", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn poly_unbranched_triangle() {
    let graph = write_temp("tri.json", triangle_json());
    let (code, out) = run_cli(&["poly", "--family", "unbranched", graph.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.trim(), r#"{"coeffs":["1","3","3","1"]}"#);
}

#[test]
fn validate_round_trips_canonical_json() {
    let graph = write_temp("p3.json", p3_json());
    let (code, out) = run_cli(&["validate", graph.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.trim(), p3_json());
}

#[test]
fn validate_rejects_malformed_input() {
    let graph = write_temp("bad.json", r#"{"directed":true,"vertices":[]}"#);
    let (code, _) = run_cli(&["validate", graph.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);

    let graph = write_temp(
        "selfloop.json",
        r#"{"directed":true,"vertices":["1"],"edges":[{"id":"a","tail":"1","head":"1"}]}"#,
    );
    let (code, _) = run_cli(&["validate", graph.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn double_emits_antiparallel_pairs() {
    let graph = write_temp("p3d.json", p3_json());
    let (code, out) = run_cli(&["double", graph.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["directed"], true);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 4);
    assert_eq!(doc["edges"][0]["id"], "a'");
    assert_eq!(doc["edges"][1]["id"], "a''");
}

#[test]
fn poly_even_uses_computed_bipartition() {
    let doubled = {
        let graph = write_temp("p3e.json", p3_json());
        let (_, out) = run_cli(&["double", graph.to_str().unwrap()]);
        write_temp("p3e-doubled.json", out.trim())
    };
    let (code, out) = run_cli(&["poly", "--family", "even", doubled.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.trim(), r#"{"coeffs":["1","0","4"]}"#);
}

#[test]
fn poly_even_rejects_non_bipartite() {
    let graph = write_temp("tri-even.json", triangle_json());
    let (code, _) = run_cli(&["poly", "--family", "even", graph.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn poly_v0_empty_set_flagged_zero() {
    let graph = write_temp(
        "arc.json",
        r#"{"directed":true,"vertices":["1","2"],"edges":[{"id":"a","tail":"1","head":"2"}]}"#,
    );
    let (code, out) = run_cli(&[
        "poly",
        "--family",
        "v0",
        "--v0",
        "",
        graph.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_PASS);
    assert_eq!(out.trim(), r#"{"coeffs":[]}"#);
}

#[test]
fn closed32_variants_differ_on_p3() {
    let graph = write_temp("p3c.json", p3_json());
    let (_, corrected) = run_cli(&["poly", "--family", "closed32", graph.to_str().unwrap()]);
    let (_, literal) = run_cli(&[
        "poly",
        "--family",
        "closed32",
        "--paper-literal",
        graph.to_str().unwrap(),
    ]);
    assert_eq!(corrected.trim(), r#"{"coeffs":["1","0","4"]}"#);
    assert_eq!(literal.trim(), r#"{"coeffs":["1","0","6"]}"#);
}

#[test]
fn certify_parity_refutation_exits_one() {
    let poly = write_temp("odd.json", r#"{"coeffs":["1","1","1"]}"#);
    let (code, out) = run_cli(&["certify", "--property", "imaginary", poly.to_str().unwrap()]);
    assert_eq!(code, EXIT_REFUTED);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["verdict"], "refuted");
    assert!(doc["notes"].as_str().unwrap().contains("odd exponent"));
}

#[test]
fn certify_deg2_requires_flag_and_proves() {
    let poly = write_temp("p144.json", r#"{"coeffs":["1","4","4"]}"#);
    let (code, _) = run_cli(&["certify", "--property", "deg2", poly.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE, "--d2 is mandatory");
    let (code, out) = run_cli(&[
        "certify",
        "--property",
        "deg2",
        "--d2",
        "4",
        poly.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_PASS);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["property"], "deg2-bound");
    assert_eq!(doc["verdict"], "proven");
}

#[test]
fn certify_real_negative_interval_endpoints_are_decimal() {
    let poly = write_temp("p133.json", r#"{"coeffs":["1","3","3","1"]}"#);
    let (code, out) = run_cli(&[
        "certify",
        "--property",
        "real-negative",
        poly.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_PASS);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["multiplicities"][0], 3);
    for pair in doc["isolating_intervals"].as_array().unwrap() {
        for endpoint in pair.as_array().unwrap() {
            let s = endpoint.as_str().unwrap();
            assert!(!s.contains('/'), "endpoint {s} must be an exact decimal");
        }
    }
}

#[test]
fn roots_reports_residuals() {
    let poly = write_temp("p104.json", r#"{"coeffs":["1","0","4"]}"#);
    let (code, out) = run_cli(&["roots", "--tol", "1e-12", poly.to_str().unwrap()]);
    assert_eq!(code, EXIT_PASS);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["converged"], true);
    let roots = doc["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    for r in roots {
        assert!(r["im"].as_f64().unwrap().abs() > 0.4);
        assert!(r["residual"].as_f64().unwrap() < 1e-9);
    }
}

#[test]
fn roots_degree_zero_is_usage_error() {
    let poly = write_temp("const.json", r#"{"coeffs":["7"]}"#);
    let (code, _) = run_cli(&["roots", poly.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn verify_reports_are_byte_identical() {
    let (c1, a) = run_cli(&[
        "verify", "--suite", "prop21", "--trials", "3", "--max-edges", "6", "--seed", "7",
    ]);
    let (c2, b) = run_cli(&[
        "verify", "--suite", "prop21", "--trials", "3", "--max-edges", "6", "--seed", "7",
    ]);
    assert_eq!(c1, EXIT_PASS);
    assert_eq!(c2, EXIT_PASS);
    assert_eq!(a, b);
    let (_, c) = run_cli(&[
        "verify", "--suite", "prop21", "--trials", "3", "--max-edges", "6", "--seed", "8",
    ]);
    assert_ne!(a, c, "different seed, different ensemble");
}

#[test]
fn verify_out_flag_writes_file_and_keeps_stdout_empty() {
    let path = std::env::temp_dir().join(format!("zerograph-report-{}.json", std::process::id()));
    let (code, out) = run_cli(&[
        "verify", "--suite", "sec31", "--trials", "2", "--seed", "1", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&body).unwrap();
    assert_eq!(doc["suite"], "sec31");
    assert_eq!(doc["all_pass"], true);
}

#[test]
fn unknown_arguments_are_usage_errors() {
    let (code, _) = run_cli(&["poly", "--family", "bogus", "x.json"]);
    assert_eq!(code, EXIT_USAGE);
    let (code, _) = run_cli(&["nonsense"]);
    assert_eq!(code, EXIT_USAGE);
}
