use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_homeo-order");

const TRANSLATION: &str = r#"{"breaks":[["0","1"]],"left_slope":"1","right_slope":"1"}"#;
const UP_BUMP: &str = r#"{"breaks":[["0","0"],["1/2","3/4"],["1","1"]],"left_slope":"1","right_slope":"1"}"#;
const TWO_BUMPS: &str = r#"[
  {"breaks":[["0","0"],["1/2","3/4"],["1","1"],["3/2","5/4"],["2","2"]],"left_slope":"1","right_slope":"1"},
  {"breaks":[["0","0"],["1/2","1/4"],["1","1"],["3/2","7/4"],["2","2"]],"left_slope":"1","right_slope":"1"}
]"#;
const TWO_STAGE: &str = r#"{"kind":"staged","stages":[
  {"region":[["0","inf"]],"prefix":[],"signs":{},"default":"+"},
  {"region":[["-inf","0"]],"prefix":[],"signs":{},"default":"-"}
]}"#;

struct Dir(TempDir);

impl Dir {
    fn new() -> Dir {
        Dir(tempfile::tempdir().unwrap())
    }

    fn file(&self, name: &str, body: &str) -> PathBuf {
        let path = self.0.path().join(name);
        fs::write(&path, body).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn json_ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    v
}

#[test]
fn sign_of_translation_under_default_ordering() {
    let dir = Dir::new();
    let f = dir.file("f.json", TRANSLATION);
    let v = json_ok(&["sign", "--fn", p(&f)]);
    assert_eq!(v["sign"], "+");
    assert_eq!(v["witness_index"], 0);
}

#[test]
fn compare_reports_both_directions() {
    let dir = Dir::new();
    let (f, g) = (dir.file("f.json", TRANSLATION), dir.file("g.json", UP_BUMP));
    let fg = json_ok(&["compare", "--f", p(&f), "--g", p(&g)]);
    let gf = json_ok(&["compare", "--f", p(&g), "--g", p(&f)]);
    assert_eq!(fg["sign"], "+");
    assert_eq!(gf["sign"], "-");
    assert_eq!(fg["point"], "0");
}

#[test]
fn composite_sign_decided_by_germ() {
    let dir = Dir::new();
    let ord = dir.file(
        "ord.json",
        r#"{"kind":"composite","germ":{"variant":"eval_lex","points":["1","0"]},"interior":{"kind":"standard","prefix":[],"signs":{},"default":"+"}}"#,
    );
    let g = dir.file("g.json", r#"{"breaks":[["2","3"]],"left_slope":"1","right_slope":"2"}"#);
    let v = json_ok(&["sign", "--ordering", p(&ord), "--fn", p(&g)]);
    assert_eq!(v["sign"], "-");
    assert_eq!(v["decided_by"], "germ");
    assert_eq!(v["germ"]["a"], "2");
    assert_eq!(v["germ"]["b"], "-1");
}

#[test]
fn absets_of_bump() {
    let dir = Dir::new();
    let f = dir.file("f.json", UP_BUMP);
    let v = json_ok(&["absets", "--fn", p(&f)]);
    assert_eq!(v["above"], serde_json::json!([["0", "1"]]));
    assert_eq!(v["below"], serde_json::json!([]));
}

#[test]
fn anb_on_two_bumps_certifies() {
    let dir = Dir::new();
    let inputs = dir.file("two_bumps.json", TWO_BUMPS);
    let v = json_ok(&["anb", "--inputs", p(&inputs)]);
    let region = serde_json::json!([["0", "1"], ["1", "2"]]);
    assert_eq!(v["certificate_holds"], true);
    assert_eq!(v["certificate"]["g"]["above"], region);
    assert_eq!(v["certificate"]["g"]["below"], serde_json::json!([]));
    assert_eq!(v["certificate"]["h"]["above"], serde_json::json!([]));
    assert_eq!(v["certificate"]["h"]["below"], region);
    assert!(v["rounds"].is_u64());
}

#[test]
fn anb_precondition_failure_exits_one() {
    let dir = Dir::new();
    let inputs = dir.file("one.json", &format!("[{UP_BUMP}]"));
    let out = run(&["anb", "--inputs", p(&inputs)]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "precondition_violated");
}

#[test]
fn malformed_input_exits_two() {
    let dir = Dir::new();
    let bad = dir.file("bad.json", r#"{"breaks":[["0","1"]],"left_slope":"-1","right_slope":"1"}"#);
    let out = run(&["sign", "--fn", p(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["kind"], "input");
    assert_eq!(run(&["sign"]).status.code(), Some(2));
    assert_eq!(run(&["realize", "--group", "pl", "--radius", "2"]).status.code(), Some(2));
}

#[test]
fn approximate_output_reparses_and_makes_inputs_positive() {
    let dir = Dir::new();
    let inputs = dir.file("in.json", &format!("[{TRANSLATION}, {UP_BUMP}]"));
    let v = json_ok(&["approximate", "--inputs", p(&inputs)]);
    let ord = dir.file("ord.json", &v["ordering"].to_string());
    for f in [TRANSLATION, UP_BUMP] {
        let f = dir.file("f.json", f);
        assert_eq!(json_ok(&["sign", "--ordering", p(&ord), "--fn", p(&f)])["sign"], "+");
    }
}

#[test]
fn approximate_inverts_negatives_first() {
    let dir = Dir::new();
    let down = r#"{"breaks":[["0","0"],["1/2","1/4"],["1","1"]],"left_slope":"1","right_slope":"1"}"#;
    let inputs = dir.file("in.json", &format!("[{TRANSLATION}, {down}]"));
    let ord = dir.file("ord.json", r#"{"kind":"standard","prefix":[],"signs":{},"default":"+"}"#);
    let v = json_ok(&["approximate", "--inputs", p(&inputs), "--ordering", p(&ord)]);
    assert_eq!(v["inverted"], serde_json::json!([1]));
}

#[test]
fn realize_z_has_alternating_t_values() {
    let v = json_ok(&["realize", "--group", "z", "--radius", "3"]);
    assert_eq!(v["t"], serde_json::json!(["0", "1", "-1", "2", "-2", "3", "-3"]));
    assert_eq!(v["words"][2], "a^-1");
    assert_eq!(v["recovery"]["violations"], serde_json::json!([]));
}

#[test]
fn realize_pl_subgroup() {
    let dir = Dir::new();
    let gens = dir.file("gens.json", &format!("[{TRANSLATION}, {UP_BUMP}]"));
    let v = json_ok(&["realize", "--group", "pl", "--radius", "2", "--generators", p(&gens)]);
    assert_eq!(v["generator_names"], serde_json::json!(["a", "b"]));
    assert_eq!(v["recovery"]["violations"], serde_json::json!([]));
    assert_eq!(v["t"][0], "0");
}

#[test]
fn limits_probe_on_approximating_sequence() {
    let dir = Dir::new();
    let seq = dir.file("seq.json", &format!(r#"{{"kind":"approximating","target":{TWO_STAGE}}}"#));
    let down = r#"{"breaks":[["-2","-2"],["-3/2","-7/4"],["-1","-1"]],"left_slope":"1","right_slope":"1"}"#;
    let tests = dir.file("tests.json", &format!("[{down}, {TRANSLATION}]"));
    let v =
        json_ok(&["limits", "probe", "--sequence", p(&seq), "--tests", p(&tests), "--budget", "16", "--prefix", "3"]);
    let traces = v["traces"].as_array().unwrap();
    assert_eq!(traces[0]["limit"], "+");
    assert_eq!(traces[0]["stable_from"], 10);
    assert_eq!(traces[1]["stable_from"], 1);
    let points: Vec<&str> =
        v["limit_prefix"].as_array().unwrap().iter().map(|e| e["point"].as_str().unwrap()).collect();
    assert_eq!(points, ["1", "1/2", "2"]);
}

#[test]
fn limits_probe_terms_sequence() {
    let dir = Dir::new();
    let seq = dir.file(
        "seq.json",
        r#"{"kind":"terms","terms":[{"kind":"standard","prefix":["0"],"signs":{"0":"-"},"default":"+"},{"kind":"standard","prefix":["0"],"signs":{"0":"+"},"default":"+"}]}"#,
    );
    let tests = dir.file("tests.json", &format!("[{TRANSLATION}]"));
    let v = json_ok(&["limits", "probe", "--sequence", p(&seq), "--tests", p(&tests), "--budget", "4"]);
    assert_eq!(v["traces"][0]["signs"], serde_json::json!(["-", "+", "+", "+"]));
    assert_eq!(v["traces"][0]["stable_from"], 2);
}

#[test]
fn hierarchy_demo_succeeds_and_is_deterministic() {
    let dir = Dir::new();
    let out = dir.0.path().join("demo.json");
    let v = json_ok(&["hierarchy-demo", "--seed", "7"]);
    for section in ["staged_not_standard", "typical_not_staged", "not_typical"] {
        assert_eq!(v[section]["ok"], true, "{section}");
    }
    assert_eq!(v["staged_not_standard"]["outside_point"], "-1");
    assert_eq!(v["typical_not_staged"]["pairs"].as_array().unwrap().len(), 20);
    let status = Command::new(BIN).args(["hierarchy-demo", "--seed", "7", "--output", p(&out)]).status().unwrap();
    assert!(status.success());
    let first = run(&["hierarchy-demo", "--seed", "7"]).stdout;
    assert_eq!(fs::read(&out).unwrap(), first);
}

#[test]
fn text_format() {
    let out = run(&["realize", "--group", "z", "--radius", "1", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("t(a^-1) = -1"));
    assert!(text.contains("0 violations"));
}
