use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use chipgraph::divisor::{w_r_d, DivisorTheory};
use chipgraph::fixtures::{banana, pdx};
use chipgraph::gonality::{find_harmonic_to_tree, SearchOptions};
use chipgraph::{is_hyperelliptic, Divisor};
use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", self.stdout))
    }
}

fn chipgraph(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_chipgraph")).current_dir(dir).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &TempDir, name: &str, v: &Value) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p
}

#[test]
fn rank_of_banana_divisor() {
    let dir = TempDir::new().unwrap();
    write(&dir, "B3.json", &json!(banana(3).to_json()));
    write(&dir, "D.json", &json!({ "coeffs": { "v1": 1, "v2": 1 } }));
    let r = chipgraph(dir.path(), &["rank", "--graph", "B3.json", "--divisor", "D.json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["result"]["rank"], 1);
}

#[test]
fn divisor_file_may_name_its_graph() {
    let dir = TempDir::new().unwrap();
    write(&dir, "D.json", &json!({ "graph": "B3", "coeffs": { "v1": 2 } }));
    let r = chipgraph(dir.path(), &["rank", "--divisor", "D.json"]);
    assert_eq!(r.json()["result"]["rank"], 0);
    let inline = json!({ "graph": banana(2).to_json(), "coeffs": { "v1": 2 } });
    write(&dir, "E.json", &inline);
    let r = chipgraph(dir.path(), &["rank", "--divisor", "E.json"]);
    assert_eq!(r.json()["result"]["rank"], 1);
}

#[test]
fn hurk_set_is_not_hurwitz() {
    let dir = TempDir::new().unwrap();
    write(&dir, "hurk.json", &json!({ "d": 4, "partitions": [[3, 1], [2, 2], [2, 2]] }));
    let r = chipgraph(dir.path(), &["hurwitz", "--input", "hurk.json", "--witness"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["result"]["hurwitz_type"], false);
    assert_eq!(v["result"]["rh_genus"]["genus"], 0);
    assert_eq!(v["result"]["witness"], Value::Null);

    write(&dir, "ok.json", &json!({ "d": 3, "partitions": [[2, 1], [2, 1], [3]] }));
    let v = chipgraph(dir.path(), &["hurwitz", "--input", "ok.json", "--witness"]).json();
    assert_eq!(v["result"]["hurwitz_type"], true);
    assert_eq!(v["result"]["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn bad_vertex_reference_reports_location() {
    let dir = TempDir::new().unwrap();
    let bad = json!({
        "vertices": [{ "id": "v1", "weight": 0 }, { "id": "v2", "weight": 0 }],
        "edges": [{ "id": "e1", "ends": ["v1", "v2"] }, { "id": "e2", "ends": ["v1", "v3"] }]
    });
    write(&dir, "bad.json", &bad);
    let r = chipgraph(dir.path(), &["genus", "--graph", "bad.json"]);
    assert_eq!(r.code, 1);
    let err = r.json()["error"].as_str().unwrap().to_string();
    assert!(err.contains("edges[1].ends[1]") && err.contains("v3"), "{err}");

    let v = chipgraph(dir.path(), &["validate", "--graph", "bad.json"]).json();
    assert_eq!(v["result"]["valid"], false);
    assert_eq!(v["result"]["violations"][0]["vertex"], "v3");
}

#[test]
fn malformed_json_reports_line_and_column() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("broken.json"), "{\"vertices\": [\n  {\"id\": }\n]}").unwrap();
    let r = chipgraph(dir.path(), &["genus", "--graph", "broken.json"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    assert_eq!(chipgraph(dir.path(), &["frobnicate"]).code, 1);
    assert_eq!(chipgraph(dir.path(), &["gonality", "--graph", "pdx"]).code, 1);
    assert_eq!(chipgraph(dir.path(), &["genus", "--graph", "missing.json"]).code, 1);
    assert_eq!(chipgraph(dir.path(), &["--help"]).code, 0);
}

#[test]
fn exhausted_budget_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let r = chipgraph(dir.path(), &["gonality", "--graph", "pdx", "-d", "3", "--budget", "1"]);
    assert_eq!(r.code, 2);
    let v = r.json();
    assert_eq!(v["result"]["decision"], "inconclusive");
    assert_eq!(v["result"]["budget"]["exhausted"], true);
}

#[test]
fn gonality_report_matches_library() {
    let dir = TempDir::new().unwrap();
    let r = chipgraph(dir.path(), &["gonality", "--graph", "pdx", "-d", "3", "--hurwitz"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    let lib = find_harmonic_to_tree(&pdx(), 3, SearchOptions { hurwitz: true, ..SearchOptions::default() }).unwrap();
    assert_eq!(v["result"]["decision"], "found");
    assert_eq!(v["result"]["witness"]["morphism"], json!(lib.witness.unwrap().to_json()));

    let v = chipgraph(dir.path(), &["gonality", "--graph", "dvx", "-d", "3", "--mode", "pseudo"]).json();
    assert_eq!(v["result"]["decision"], "not_found");
    let v = chipgraph(dir.path(), &["gonality", "--graph", "dvx", "-d", "3", "--mode", "divisorial"]).json();
    assert_eq!(v["result"]["gonal"], true);
    let v = chipgraph(dir.path(), &["gonality", "--graph", "pdx", "-d", "3", "--mode", "divisorial"]).json();
    assert_eq!(v["result"]["gonal"], false);
}

#[test]
fn hyperelliptic_and_curve_locus() {
    let dir = TempDir::new().unwrap();
    let v = chipgraph(dir.path(), &["hyperelliptic", "--graph", "S3prime", "--certificate"]).json();
    let lib = is_hyperelliptic(&chipgraph::fixtures::spider_s3_prime()).unwrap();
    assert_eq!(v["result"]["hyperelliptic"], lib.hyperelliptic);
    assert_eq!(v["result"]["hyperelliptic"], true);
    assert!(v["result"]["involution"]["quotient"].is_object());
    let v = chipgraph(dir.path(), &["curve-locus", "--graph", "S3prime"]).json();
    assert_eq!(v["result"]["in_locus"], false);
    assert_eq!(v["result"]["bridge_violations"], json!(["c"]));
}

#[test]
fn wrd_and_equiv_match_library() {
    let dir = TempDir::new().unwrap();
    let v = chipgraph(dir.path(), &["wrd", "--graph", "B2", "-d", "2", "-r", "1"]).json();
    assert_eq!(v["result"]["count"], w_r_d(&banana(2), 2, 1).unwrap().len());
    write(&dir, "a.json", &json!({ "graph": "B3w01", "coeffs": { "v2": 2 } }));
    write(&dir, "b.json", &json!({ "graph": "B3w01", "coeffs": { "v2~w1": 2 } }));
    let v = chipgraph(dir.path(), &["equiv", "--divisor", "a.json", "--divisor", "b.json"]).json();
    assert_eq!(v["result"]["equivalent"], true);
    let v = chipgraph(dir.path(), &["reduce", "--divisor", "b.json"]).json();
    let g = chipgraph::fixtures::by_name("B3w01").unwrap();
    let t = DivisorTheory::new(&g);
    let lifted = Divisor::from_ids(t.model(), &[("v2~w1", 2)]).unwrap();
    let expected = t.reduced(&lifted).unwrap();
    assert_eq!(v["result"]["reduced"]["coeffs"], json!(expected.to_map(t.model())));
}

#[test]
fn transforms_match_library() {
    let dir = TempDir::new().unwrap();
    write(&dir, "plan.json", &json!({ "b1": 2 }));
    let v = chipgraph(dir.path(), &["transform", "--graph", "pdx", "--op", "refine", "--input", "plan.json"]).json();
    let plan = [("b1".to_string(), 2)].into_iter().collect();
    assert_eq!(v["result"]["graph"], json!(pdx().refine_by_id(&plan).unwrap().to_json()));
    let v = chipgraph(dir.path(), &["transform", "--graph", "B3w01", "--op", "weightless"]).json();
    assert_eq!(v["result"]["graph"]["vertices"].as_array().unwrap().len(), 3);
    let v = chipgraph(dir.path(), &["transform", "--graph", "S3", "--op", "contract-bridges"]).json();
    assert_eq!(v["result"]["graph"]["vertices"].as_array().unwrap().len(), 1);
}

#[test]
fn reports_are_byte_stable() {
    let dir = TempDir::new().unwrap();
    let args = ["gonality", "--graph", "pdx", "-d", "3", "--hurwitz"];
    let a = chipgraph(dir.path(), &args).stdout;
    let b = chipgraph(dir.path(), &args).stdout;
    assert_eq!(a, b);
    let out = dir.path().join("report.json");
    let r = chipgraph(dir.path(), &["fixtures", "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert!(v["result"]["fixtures"]["pdx"].is_object());
}

#[test]
fn in_process_runner_matches_binary() {
    let dir = TempDir::new().unwrap();
    let args = ["fixtures", "dvx"];
    let bin = chipgraph(dir.path(), &args);
    let lib = chipgraph::cli::run(std::iter::once("chipgraph").chain(args));
    assert_eq!((bin.code, bin.stdout), (lib.code, lib.stdout));
}
