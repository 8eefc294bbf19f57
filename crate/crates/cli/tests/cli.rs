//! End-to-end tests of the `dehn` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use dehn::formats::{GraphJson, RatFuncJson};
use dehn_core::diagram::parse_pd;
use dehn_core::pipeline::build_graph;
use dehn_core::{DehnGraph, Polynomial, RatFunc};
use serde_json::Value;

const TREFOIL: &str = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]";
const CORPUS: &str = "# standard table diagrams\n\
[[1,2,2,1]]\n\
[[1,4,2,5],[3,6,4,1],[5,2,6,3]]\n\
\n\
X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]\n\
X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]\n\
X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]\n\
X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]\n";

fn dehn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dehn")).args(args).env_remove("DEHN_LOG").output().unwrap()
}

fn corpus_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(CORPUS.as_bytes()).unwrap();
    f
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn ratfunc(v: &Value) -> RatFunc {
    let j: RatFuncJson = serde_json::from_value(v.clone()).unwrap();
    RatFunc::try_from(&j).unwrap()
}

fn error_json(o: &Output) -> Value {
    assert!(o.stdout.is_empty(), "stdout not empty: {}", stdout(o));
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    serde_json::from_str(err.trim()).unwrap()
}

#[test]
fn compute_trefoil() {
    let o = dehn(&["compute", "--pd", TREFOIL]);
    assert_eq!(o.status.code(), Some(0));
    let v = &json_lines(&o)[0];
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["crossings"], 3);
    let normalized = ratfunc(&v["torsion"]["normalized"]);
    let expected = RatFunc::new(Polynomial::from_ints(&[1, -1, 1]), Polynomial::from_ints(&[-1, 1])).unwrap();
    assert_eq!(normalized, expected);
    let reference = &RatFunc::new(Polynomial::from_ints(&[0, -1, 2]), Polynomial::from_ints(&[1, -1, 1])).unwrap()
        - &RatFunc::new(Polynomial::from_ints(&[0, 1]), Polynomial::from_ints(&[-1, 1])).unwrap();
    let defect = ratfunc(&v["defect"]["representative"]);
    assert!((&defect - &reference).is_integer_constant());
    for check in ["exact", "propagator", "lescop", "milnor", "d2_consistency"] {
        assert_eq!(v["checks"][check], true, "{check}");
    }
    assert!(v.get("diagram").is_none());
}

#[test]
fn compute_dump_includes_diagram_and_complex() {
    let o = dehn(&["compute", "--pd", TREFOIL, "--dump"]);
    let v = &json_lines(&o)[0];
    assert_eq!(v["diagram"]["regions"].as_array().unwrap().len(), 5);
    assert_eq!(v["complex"]["d2"]["rows"], 4);
    assert_eq!(v["complex"]["d2"]["cols"], 3);
    assert_eq!(v["complex"]["basis"]["c0"][0], "inf");
}

#[test]
fn output_is_deterministic_and_ordered() {
    let f = corpus_file();
    let path = f.path().to_str().unwrap();
    let serial = dehn(&["compute", "--file", path]);
    let parallel = dehn(&["compute", "--file", path, "--parallel", "4"]);
    let again = dehn(&["compute", "--file", path, "--parallel", "4"]);
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(serial.stdout, parallel.stdout);
    assert_eq!(parallel.stdout, again.stdout);
    let lines = json_lines(&serial);
    assert_eq!(lines.len(), 6);
    let crossings: Vec<u64> = lines.iter().map(|v| v["crossings"].as_u64().unwrap()).collect();
    assert_eq!(crossings, [1, 3, 4, 5, 5, 6]);
}

#[test]
fn oracle_on_corpus() {
    let f = corpus_file();
    let o = dehn(&["oracle", "--file", f.path().to_str().unwrap()]);
    let texts: Vec<String> = json_lines(&o).iter().map(|v| v["text"].as_str().unwrap().to_string()).collect();
    assert_eq!(texts, ["1", "t^2-t+1", "t^2-3t+1", "t^4-t^3+t^2-t+1", "2t^2-3t+2", "2t^2-5t+2"]);
    assert_eq!(json_lines(&o)[2]["alexander"], serde_json::json!(["1", "-3", "1"]));
}

#[test]
fn check_reports_every_knot() {
    let f = corpus_file();
    let o = dehn(&["check", "--file", f.path().to_str().unwrap(), "--seeds", "3", "--parallel", "2"]);
    assert_eq!(o.status.code(), Some(0));
    for v in json_lines(&o) {
        assert_eq!(v["passed"], true, "{v}");
        assert_eq!(v["seeds"], 3);
        for (_, ok) in v["checks"].as_object().unwrap() {
            assert_eq!(ok, &Value::Bool(true));
        }
    }
}

#[test]
fn graph_dot_matches_library() {
    let o = dehn(&["graph", "--pd", TREFOIL, "--format", "dot"]);
    let (_, g) = build_graph(&parse_pd(TREFOIL).unwrap(), None).unwrap();
    assert_eq!(stdout(&o), g.export_dot());
}

#[test]
fn graph_json_round_trips() {
    let o = dehn(&["graph", "--pd", TREFOIL, "--outer-region", "3"]);
    let v = &json_lines(&o)[0];
    let parsed: GraphJson = serde_json::from_value(v.clone()).unwrap();
    let g = DehnGraph::try_from(&parsed).unwrap();
    let (_, expected) = build_graph(&parse_pd(TREFOIL).unwrap(), Some(3)).unwrap();
    assert_eq!(g, expected);
    assert_eq!(GraphJson::from(&g), parsed);
    assert_eq!(v["edges"].as_array().unwrap().len(), 17);
    assert_eq!(v["vertices"][0]["kind"], "crossing");
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_dehn"))
        .args(["oracle", "--file", "-", "--format", "text"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(TREFOIL.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "t^2-t+1\n");
}

#[test]
fn error_exit_codes() {
    let cases: [(&[&str], i32, &str); 6] = [
        (&["compute", "--pd", "[[1,2,2]]"], 3, "parse"),
        (&["compute", "--pd", "[[4,1,3,2],[2,3,1,4]]"], 3, "parse"),
        (&["compute", "--pd", "[[1,5,2,4],[3,6,4,1],[5,2,6,3]]"], 4, "non_planar"),
        (&["compute", "--pd", TREFOIL, "--outer-region", "5"], 9, "invalid_region"),
        (&["oracle", "--file", "/nonexistent/knots.txt"], 8, "io"),
        (&["compute", "--pd", TREFOIL, "--format", "dot"], 2, "usage"),
    ];
    for (args, code, kind) in cases {
        let o = dehn(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}");
        let e = error_json(&o);
        assert_eq!(e["error"], kind);
        assert_eq!(e["code"], code);
    }
}

#[test]
fn clap_usage_errors_are_json() {
    let o = dehn(&["compute", "--pd", TREFOIL, "--file", "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"], "usage");
    let o = dehn(&["compute"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn one_bad_line_suppresses_all_output() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{TREFOIL}\n# comment\n[[1,2,2,1]]\n[[1,2,3,4]]").unwrap();
    let o = dehn(&["compute", "--file", f.path().to_str().unwrap(), "--parallel", "3"]);
    assert_eq!(o.status.code(), Some(3));
    let e = error_json(&o);
    assert_eq!(e["line"], 4);
    assert_eq!(e["pd"], "[[1,2,3,4]]");
}

#[test]
fn empty_input_is_rejected() {
    let f = tempfile::NamedTempFile::new().unwrap();
    let o = dehn(&["compute", "--file", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}
