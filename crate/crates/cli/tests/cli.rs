use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gsr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsr")).args(args).env_remove("GSR_TOLERANCE").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn weyl_orbit_counts_down_to_the_wall() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "weyl.json", r#"{"family":"weyl"}"#);
    let out = gsr(&["orbit", "--spec", &spec, "--seed", "2", "--back", "5", "--fwd", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let o = &v["orbits"][0];
    assert_eq!(o["upper"]["wall"], 3);
    for pair in o["values"].as_array().unwrap() {
        let k = pair[0].as_i64().unwrap();
        assert_eq!(pair[1].as_str().unwrap(), (2 - k).to_string());
    }
}

#[test]
fn induce_then_verify_spin_one() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "su2.json", r#"{"family":"su2"}"#);
    let rep = dir.path().join("out.json");
    let out = gsr(&["induce", "--spec", &spec, "--s", "8", "--t", "-2", "--output", rep.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(v["basis"].as_array().unwrap().len(), 3);
    for op in ["E", "F", "H"] {
        assert!(v["ops"][op].is_array());
    }
    let out = gsr(&["verify", "--rep", rep.to_str().unwrap(), "--checks", "relations,commutant"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json(&out);
    assert!(reports.as_array().unwrap().iter().all(|r| r["status"] == "pass"));
}

#[test]
fn output_is_deterministic() {
    let args = ["induce", "--spec", "su11", "--s", "-1", "--t", "0", "--window", "-5:6"];
    let a = gsr(&args);
    let b = gsr(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn corrupted_matrix_fails_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let out = gsr(&["induce", "--spec", "su2", "--s", "8", "--t", "-2"]);
    let mut v = json(&out);
    v["ops"]["H"][0][2] = Value::String("5".into());
    let rep = write(dir.path(), "bad.json", &v.to_string());
    let out = gsr(&["verify", "--rep", &rep, "--checks", "relations"]);
    assert_eq!(out.status.code(), Some(1));
    let r = &json(&out)[0];
    assert_eq!(r["status"], "fail");
    assert!(r["witness"].as_str().unwrap().contains("relation"));
}

#[test]
fn schema_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let mixed = write(
        dir.path(),
        "mixed.json",
        r#"{"family":"custom","group":{"kind":"Z"},"generators":[{"name":"a","degree":1}],"relations":["a - a*a"]}"#,
    );
    let out = gsr(&["classify", "--spec", &mixed, "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mixes degrees"));
    let disk = write(dir.path(), "disk.json", r#"{"family":"quantum_disk","mu":"0","q":"1"}"#);
    assert_eq!(gsr(&["classify", "--spec", &disk, "--seed", "1"]).status.code(), Some(3));
    let broken = write(dir.path(), "broken.json", "{\n \"family\": \"dynamical\",\n \"f_num\": [\"1\", \"1/0\"]\n}");
    let out = gsr(&["classify", "--spec", &broken, "--seed", "1"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("f_num[1]"));
}

#[test]
fn periodic_family_and_mackey() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "f.json", r#"{"family":"dynamical","f_num":["1","-1"]}"#);
    let out = gsr(&["classify", "--spec", &spec, "--seed", "1/4"]);
    let v = json(&out);
    assert_eq!(v["classes"][0]["class"], "BilateralPeriodic(2)");
    assert_eq!(v["classes"][0]["stabilizer"], "2Z");
    let out = gsr(&["mackey", "--spec", &spec, "--seed", "1/4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["verdict"].as_str().unwrap().starts_with("trivial"));
    let out = gsr(&["imprimitivity", "--spec", &spec, "--seed", "1/4", "--z", "8:5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn fqs_table_and_tolerance_override() {
    let out = gsr(&["fqs", "--n", "3"]);
    let v = json(&out);
    let a: Vec<&str> = v["points"].as_array().unwrap().iter().filter(|p| p["n"] == 3).map(|p| p["a"].as_str().unwrap()).collect();
    assert_eq!(a, ["0", "1/16", "1/2"]);
    let out = Command::new(env!("CARGO_BIN_EXE_gsr"))
        .args(["fqs", "--n", "3"])
        .env("GSR_TOLERANCE", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(gsr(&["fqs", "--n", "1"]).status.code(), Some(1));
}
