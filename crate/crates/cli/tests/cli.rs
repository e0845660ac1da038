use std::path::PathBuf;
use std::process::{Command, Output};

fn shv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_shv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("shv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const CONST: &str = r#"{"local":[{"alpha":"1","r":1,"deg":0,"mult":1}]}"#;

#[test]
fn twist_of_constant_sheaf() {
    let c = write("const.json", CONST);
    let o = shv(&["twist", "--input", c.to_str().unwrap(), "--lambda", "2/1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["local"][0]["alpha"], "2");
    assert_eq!(v["local"][0]["r"], 1);
    assert_eq!(v["wrapped"].as_array().unwrap().len(), 0);
}

#[test]
fn invariant_of_constant_sheaf() {
    let c = write("const2.json", CONST);
    let o = shv(&["invariant", "--alpha", "1", "--r", "1", "--degree", "0", "--input", c.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = shv(&["--json", "invariant", "--alpha", "2", "--r", "1", "--degree", "0", "-i", c.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["h"], 0);
}

#[test]
fn decompose_representation() {
    // k_[0,1) on the points 0 and 1
    let rep = r#"{"kind":"line","points":["0","1"],
        "spaces":{"stalks":[1,0],"arcs":[0,1,0]},
        "arrows":[[],[["1"]],[[]],[]]}"#;
    let p = write("rep.json", rep);
    let o = shv(&["decompose", "-i", p.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let s = &v["summands"][0];
    assert_eq!((s["lo"].as_str(), s["lo_closed"].as_bool()), (Some("0"), Some(true)));
    assert_eq!((s["hi"].as_str(), s["hi_closed"].as_bool()), (Some("1"), Some(false)));
}

#[test]
fn cohomology_hom_and_ss() {
    let l = write(
        "line.json",
        r#"{"summands":[{"lo":"0","lo_closed":true,"hi":"1","hi_closed":true,"deg":0,"mult":1}]}"#,
    );
    let l = l.to_str().unwrap();
    let o = shv(&["--json", "cohomology", "-i", l]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["0"], 1);
    assert_eq!(stdout(&shv(&["hom", "-i", l, "--with", l])).trim(), "1");
    let o = shv(&["--json", "ss", "-i", l]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let signs: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["covector"]["sign"].as_str().unwrap()).collect();
    assert_eq!(signs, ["+", "-"]);
    let o = shv(&["--json", "linked", "-i", l, "--p", "0,+", "--q", "1,-"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["linked"], true);
}

#[test]
fn malformed_input_exits_2_with_location() {
    let p = write("bad.json", "{\"summands\": [\n  {\"lo\": 0}\n]}");
    let o = shv(&["ss", "-i", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.json:2:"), "{err}");
    let o = shv(&["ss", "-i", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(2));
    let c = write("const3.json", CONST);
    let o = shv(&["invariant", "--alpha", "1/0", "--r", "1", "--degree", "0", "-i", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_lemmas_reports_and_is_deterministic() {
    let o = shv(&["verify-lemmas", "--suite", "tensor-jordan", "--grid-size", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS tensor-jordan"));
    let run = || {
        let o = shv(&["--json", "verify-lemmas", "--suite", "duality", "--grid-size", "20", "--seed", "7"]);
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v[0]["wall_ms"] = serde_json::Value::Null;
        v
    };
    assert_eq!(run(), run());
    assert_eq!(shv(&["verify-lemmas", "--suite", "bogus"]).status.code(), Some(2));
}
