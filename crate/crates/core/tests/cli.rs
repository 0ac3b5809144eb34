use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn zntower(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zntower")).args(args).output().expect("spawn")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write_factory(dir: &Path, name: &str, args: &[&str]) -> PathBuf {
    let o = zntower(args);
    assert!(o.status.success(), "{}", stderr(&o));
    let p = dir.join(name);
    std::fs::write(&p, &o.stdout).unwrap();
    p
}

fn t1_file(dir: &Path) -> PathBuf {
    let p = dir.join("t1.json");
    let json = zn_tower::TowerFile::from_tower(&zn_tower::factory::t1()).to_json();
    std::fs::write(&p, json).unwrap();
    p
}

#[test]
fn eval_reports_normal_form_and_length() {
    let dir = TempDir::new().unwrap();
    let t = t1_file(dir.path());
    let o = zntower(&["eval", "-t", t.to_str().unwrap(), "a^3*z"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("normal form: z*b^3"), "{out}");
    assert!(out.contains("length: (3,1)"), "{out}");
    assert!(out.contains("height: 2"), "{out}");
}

#[test]
fn eq_and_commutes() {
    let dir = TempDir::new().unwrap();
    let t = t1_file(dir.path());
    let t = t.to_str().unwrap();
    let o = zntower(&["eq", "-t", t, "z^-1*a*z", "b"]);
    assert_eq!(stdout(&o).trim(), "true");
    let o = zntower(&["eq", "-t", t, "a", "b"]);
    assert_eq!(stdout(&o).trim(), "false");
    let o = zntower(&["commutes", "-t", t, "a^2", "a^-5"]);
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn unknown_symbol_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let t = t1_file(dir.path());
    let o = zntower(&["eval", "-t", t.to_str().unwrap(), "q"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn extend_hnn_rejects_conjugate_to_inverse() {
    let dir = TempDir::new().unwrap();
    let fa = dir.path().join("fa.json");
    let json = zn_tower::TowerFile::from_tower(&zn_tower::GroupTower::free(&["a", "b"]).unwrap()).to_json();
    std::fs::write(&fa, json).unwrap();
    let o = zntower(&["extend-hnn", "-t", fa.to_str().unwrap(), "--source", "a", "--target", "a^-1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("conjugate-to-inverse"), "{}", stderr(&o));

    let out = dir.path().join("ext.json");
    let o = zntower(&[
        "extend-hnn",
        "-t",
        fa.to_str().unwrap(),
        "--source",
        "a",
        "--target",
        "b",
        "--name",
        "s",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = zntower(&["eq", "-t", out.to_str().unwrap(), "s^-1*a*s", "b"]);
    assert_eq!(stdout(&o).trim(), "true");
}

#[test]
fn factories_round_trip_through_check_axioms() {
    let dir = TempDir::new().unwrap();
    let s2 = write_factory(dir.path(), "s2.json", &["surface", "2"]);
    let o = zntower(&["check-axioms", "-t", s2.to_str().unwrap(), "--samples", "100", "--seed", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("OK"));

    let ab = write_factory(dir.path(), "ab.json", &["abelian", "2"]);
    let o = zntower(&["commutes", "-t", ab.to_str().unwrap(), "a", "z"]);
    assert_eq!(stdout(&o).trim(), "true", "{}", stderr(&o));
}

#[test]
fn reduce_gens_prints_a_reduced_set() {
    let dir = TempDir::new().unwrap();
    let t = t1_file(dir.path());
    let o = zntower(&["reduce-gens", "-t", t.to_str().unwrap(), "a*z", "z"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(!stdout(&o).is_empty());
}

#[test]
fn split_level_writes_a_tower() {
    let dir = TempDir::new().unwrap();
    let t = t1_file(dir.path());
    let out = dir.path().join("split.json");
    let o = zntower(&["split-level", "-t", t.to_str().unwrap(), "--reduce", "--out", out.to_str().unwrap(), "a", "z"]);
    assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
    assert!(zn_tower::load_tower(&std::fs::read_to_string(out).unwrap()).is_ok());
}
