use std::path::PathBuf;
use std::process::{Command, Output};

use floerkit::ainf::check_partial_ainf;
use floerkit::format;
use floerkit::scalar::q;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floerkit")).args(args).output().expect("binary runs")
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn morse_example_passes() {
    let m = data("morse3.json");
    for args in [vec!["check", "ksystem", path(&m)], vec!["check-ksystem", "--input", path(&m)]] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
        assert_eq!(report(&o)["status"], "pass");
    }
}

#[test]
fn single_channel_fails_at_the_offending_pair() {
    let o = run(&["check-ksystem", path(&data("morse_single_channel.json"))]);
    assert_eq!(o.status.code(), Some(1));
    let r = report(&o);
    let bad = &r["checks"][0]["d_squared"];
    assert_eq!(bad.as_array().unwrap().len(), 1);
    assert_eq!(bad[0]["minus"], "0");
    assert_eq!(bad[0]["plus"], "2");
}

#[test]
fn promote_ainf_output_passes_check_ainf() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("promoted.json");
    let iso_out = dir.path().join("iso_promoted.json");
    let o = run(&[
        "promote", "ainf",
        "--from", path(&data("m0.json")),
        "--iso", path(&data("iso.json")),
        "--to", path(&data("m1.json")),
        "--final-cut", "2",
        "--output", path(&out),
        "--iso-output", path(&iso_out),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let c = run(&["check", "ainf", path(&out)]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(report(&c)["status"], "pass");
    assert_eq!(run(&["check-isotopy", path(&iso_out)]).status.code(), Some(0));

    // independent reading of the result
    let m = format::parse_ainf(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(m.cut(), &q(2));
    assert!(check_partial_ainf(&m).passed());
    let m0 = format::parse_ainf(&std::fs::read_to_string(data("m0.json")).unwrap()).unwrap();
    assert_eq!(m.energy_cut(&q(1)).unwrap(), m0);
}

#[test]
fn corners_verify_histogram() {
    let o = run(&["corners", "verify", "--n", "2", "--k", "1", "--l", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = report(&o);
    let h = r["covering_map"]["fiber_histogram"].as_object().unwrap();
    assert_eq!(h.len(), 1);
    assert_eq!(h["2"], 4);
    assert_eq!(r["partial_collars"]["checked"], 81);
}

#[test]
fn malformed_rational_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(data("morse3.json")).unwrap().replacen("\"cut\": \"2\"", "\"cut\": \"1/0\"", 1);
    std::fs::write(&bad, text).unwrap();
    let o = run(&["check-ksystem", path(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let r = report(&o);
    assert_eq!(r["error"], "SchemaError");
    assert_eq!(r["pointer"], "/cut");
}

#[test]
fn missing_file_and_bad_flags_are_input_errors() {
    assert_eq!(run(&["check-ainf", "/nonexistent/file.json"]).status.code(), Some(2));
    assert_eq!(run(&["corners-smooth", "--k", "4"]).status.code(), Some(2));
    assert_eq!(run(&["limit", "--final-cut", "x", path(&data("m0.json"))]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn promote_floer_writes_a_checkable_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json");
    let o = run(&["promote-floer", path(&data("promote_complex.json")), "--output", path(&out)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let r = report(&o);
    // with the minimal choice the promotion reproduces the target complex
    assert_eq!(r["result"]["complex"], "x2");
    let c = run(&["check-ksystem", path(&out)]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn obstruction_exits_three_with_a_certificate() {
    // the reference complex is not a complex: 2 <- 1 <- 0 composes to 1 on points
    let label = |id: &str, e: &str, mu: i64| {
        serde_json::json!({"id": id, "E": e, "mu": mu, "dimR": 0,
            "complex": {"basis": [{"name": "p", "deg": 0}]}})
    };
    let critical = serde_json::json!([label("0", "0", 0), label("1", "1", 1), label("2", "2", 2)]);
    let maps = serde_json::json!([
        {"from": "0", "to": "1", "matrix": [[0, 0, "1"]]},
        {"from": "1", "to": "2", "matrix": [[0, 0, "1"]]},
    ]);
    let b = serde_json::json!({
        "complexes": {
            "x1": {"critical": critical, "cut": "1", "maps": maps},
            "x2": {"critical": critical, "cut": "2", "maps": maps},
        },
        "maps": {"psi": {"source": "x1", "target": "x2", "cut": "1", "loss": "0", "degree": 0, "unipotent": true}},
        "task": {"kind": "complex", "x1": "x1", "x2": "x2", "psi": "psi"},
    });
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("obstructed.json");
    std::fs::write(&bad, b.to_string()).unwrap();
    let o = run(&["promote-floer", path(&bad)]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stdout));
    let r = report(&o);
    assert_eq!(r["error"], "PromotionObstructed");
    assert!(r["certificate"]["location"].as_str().unwrap().contains("2 <- 0"));
    assert_eq!(r["certificate"]["value"], "-1");
}

#[test]
fn trees_are_json_lines_and_deterministic() {
    let monoid = data("monoid.json");
    let args = ["trees", "enumerate", "--k", "2", "--beta", "E:1,mu:0", "--monoid", path(&monoid), "--n", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<Value> = String::from_utf8(a.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert!(!lines.is_empty());
    assert!(lines.iter().all(|l| l["tree"].is_string() && l["dimension"].is_i64()));
    assert_eq!(lines.iter().filter(|l| l["corner_codim"] == 0).count(), 1);
}

#[test]
fn smoothing_and_admissible_reports() {
    let o = run(&["corners-smooth", "--k", "2", "--samples", "200", "--tol", "1e-12"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(report(&o)["max_violation"].as_f64().unwrap() < 1e-12);
    let again = run(&["corners-smooth", "--k", "2", "--samples", "200", "--tol", "1e-12"]);
    assert_eq!(o.stdout, again.stdout);

    let a = run(&["admissible-check", "--change", "exp:1:1"]);
    assert_eq!(a.status.code(), Some(0));
    let s = run(&["admissible-check", "--change", "shift:1"]);
    let r = report(&s);
    let d2 = r["report"]["second_derivative_at_zero"].as_f64().unwrap();
    assert!((d2 + 2.0).abs() < 1e-6, "{d2}");
    assert_eq!(run(&["admissible-check", "--change", "spiral"]).status.code(), Some(2));
}
