use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    root.to_str().unwrap().to_string()
}

fn nekra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nekra")).args(args).env_remove("NEKRA_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_out(args: &[&str]) -> Value {
    let o = nekra(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn error_kind(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).unwrap();
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn act_prints_the_image() {
    let o = nekra(&["act", "-g", &fixture("odometer.json"), "-w", "a", "-v", "2,2,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1,1,2");
}

#[test]
fn unknown_generator_is_a_domain_error() {
    let o = nekra(&["act", "-g", &fixture("odometer.json"), "-w", "z", "-v", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_kind(&o), "UnknownGenerator");
}

#[test]
fn find_m_on_the_odometer() {
    assert_eq!(json_out(&["find-m", "-g", &fixture("odometer.json")]), serde_json::json!({ "m": 2 }));
}

#[test]
fn malformed_files_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad_perm = dir.path().join("bad_perm.json");
    std::fs::write(
        &bad_perm,
        r#"{"degree":2,"generators":["a"],"recursions":{"a":{"perm":[1,1],"states":[[],[]]}},"relators":[]}"#,
    )
    .unwrap();
    let o = nekra(&["abelianize", "-g", bad_perm.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "SchemaError");

    let bad_state = dir.path().join("bad_state.json");
    std::fs::write(
        &bad_state,
        r#"{"degree":2,"generators":["a"],"recursions":{"a":{"perm":[2,1],"states":[[],["q"]]}},"relators":[]}"#,
    )
    .unwrap();
    let o = nekra(&["abelianize", "-g", bad_state.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "SchemaError");

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{\"degree\": 2,").unwrap();
    let o = nekra(&["abelianize", "-g", broken.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "ParseError");

    let o = nekra(&["abelianize", "-g", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_kind(&o), "IoError");
}

#[test]
fn group_documents_round_trip_through_duplicate() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["odometer.json", "grigorchuk.json", "dinf.json", "odometer_mirrored.json"] {
        let original: Value = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
        let once = json_out(&["duplicate", "-g", &fixture(name), "-m", "1"]);
        assert_eq!(once, original, "{name}");
        let path = dir.path().join(name);
        std::fs::write(&path, once.to_string()).unwrap();
        assert_eq!(json_out(&["duplicate", "-g", path.to_str().unwrap(), "-m", "1"]), original);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["embed-bh", "-g", &fixture("dinf.json"), "-w", "s a", "-w", "a"];
    let a = nekra(&args);
    let b = nekra(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    // keys are sorted
    assert!(text.find("\"Q\"").unwrap() < text.find("\"d_prime\"").unwrap());
    assert!(text.find("\"d_prime\"").unwrap() < text.find("\"index_H\"").unwrap());
}

#[test]
fn abelianizations() {
    let q = json_out(&["abelianize", "-g", &fixture("grigorchuk.json")]);
    assert_eq!(q["factors"], serde_json::json!([2, 2, 2]));
    let q = json_out(&["abelianize-v", "-g", &fixture("dinf.json")]);
    assert_eq!((q["factors"].clone(), q["rank"].clone()), (serde_json::json!([2]), serde_json::json!(0)));
}

#[test]
fn istrivial_respects_the_budget_variable() {
    let g = fixture("grigorchuk.json");
    let v = json_out(&["istrivial", "-g", &g, "-w", "a d a d a d a d"]);
    assert_eq!(v["result"], "Trivial");
    let o = Command::new(env!("CARGO_BIN_EXE_nekra"))
        .args(["istrivial", "-g", &g, "-w", "a d a d a d a d"])
        .env("NEKRA_BUDGET", "1,1")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"], "Unknown");
    let o = Command::new(env!("CARGO_BIN_EXE_nekra"))
        .args(["istrivial", "-g", &g, "-w", "a"])
        .env("NEKRA_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn v_elements_compose_and_classify() {
    let dir = tempfile::tempdir().unwrap();
    let swap = dir.path().join("swap.json");
    std::fs::write(&swap, r#"{"domain": [[1], [2]], "range": [[2], [1]], "decorations": [["a"], []]}"#).unwrap();
    let g = fixture("dinf.json");
    let sq = json_out(&["v-compose", "-g", &g, "-p", swap.to_str().unwrap(), "-q", swap.to_str().unwrap()]);
    assert_eq!(sq["domain"], serde_json::json!([[1], [2]]));
    assert_eq!(sq["range"], serde_json::json!([[1], [2]]));
    assert_eq!(sq["decorations"], serde_json::json!([["a"], ["a"]]));
    let c = json_out(&["v-class", "-g", &g, "-e", swap.to_str().unwrap()]);
    assert_eq!(c["class"], serde_json::json!([1]));
    assert_eq!(c["in_commutator"], false);
}

#[test]
fn portrait_and_mul() {
    let g = fixture("odometer.json");
    let p = json_out(&["portrait", "-g", &g, "-w", "a", "-d", "1"]);
    assert_eq!(p["portrait"]["perm"], serde_json::json!([2, 1]));
    let m = json_out(&["mul", "-g", &g, "-w", "a", "-w", "a^-1 a^-1"]);
    assert_eq!(m["product"], serde_json::json!(["a^-1"]));
}

#[test]
fn virtend_commands() {
    let spec = fixture("z_p2_n1.json");
    let check = json_out(&["virtend-check", "-s", &spec, "-g", &fixture("dinf.json"), "-G", &fixture("dinf_affine.json")]);
    assert_eq!(check["passed"], true);
    let check = json_out(&[
        "virtend-check",
        "-s",
        &spec,
        "-g",
        &fixture("odometer_mirrored.json"),
        "-G",
        &fixture("odometer_affine.json"),
    ]);
    assert_eq!(check["passed"], false);

    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("s.json");
    std::fs::write(&s, r#"{"a": [0], "gamma": [[-1]]}"#).unwrap();
    let st = json_out(&["virtend-state", "-s", &spec, "-e", s.to_str().unwrap(), "-t", "1"]);
    assert_eq!(st["image"], serde_json::json!([1]));
    assert_eq!(st["state"]["a"], serde_json::json!([{ "num": -1, "exp": 0 }]));
    let f = json_out(&["virtend-check", "-s", &spec, "-e", s.to_str().unwrap(), "-d", "5"]);
    assert_eq!(f["faithfulness"]["moved"], serde_json::json!([2, 1]));

    let rel = json_out(&["relators", "-s", &fixture("z6_p5_n2.json"), "-G", &fixture("gl2_elementary.json")]);
    assert_eq!(rel["all_identity"], true);

    let o = nekra(&["relators", "-s", &spec]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_kind(&o), "BadRing");
}
