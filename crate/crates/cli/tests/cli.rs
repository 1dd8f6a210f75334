use std::path::Path;
use std::process::{Command, Output};

use lba_core::io;
use lba_core::semifield::{apply_isotopism, dickson, Isotopism};
use lba_core::{FieldTower, Matrix};
use serde_json::Value;

fn lba(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lba"))
        .args(args)
        .env_remove("LBA_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_then_fingerprint() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g1.json");
    let o = lba(&["construct", "gm", "--q", "3", "--m", "1", "-o", path_str(&file)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = lba(&["analyze", path_str(&file), "--fingerprint"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["fingerprint"]["type_set"], serde_json::json!([0, 2]));
    assert_eq!(v["fingerprint"]["nilpotency_class"], 3);
    assert_eq!(v["fingerprint"]["breadth_histogram"]["0"], 9);
}

#[test]
fn every_construction_is_readable_by_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["gm", "--q", "3", "--m", "2"],
        &["lm", "--q", "5"],
        &["u3", "--q", "3", "--m", "2"],
        &["u5", "--p", "3", "--s", "1"],
        &["v", "--q", "3", "--m", "2"],
        &["lf-dickson", "--q", "9"],
        &["lf-field", "--q", "3", "--m", "2"],
        &["gm", "--q", "3", "--m", "2", "--poly", "2,1,1"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let file = dir.path().join(format!("a{i}.json"));
        let mut argv = vec!["construct"];
        argv.extend_from_slice(args);
        argv.extend_from_slice(&["-o", path_str(&file)]);
        let o = lba(&argv);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        let o = lba(&["analyze", path_str(&file), "--series"]);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn parity_suite_passes() {
    let o = lba(&["verify", "parity", "--q", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suite"], "parity");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));
}

#[test]
fn parameter_errors_exit_2() {
    assert_eq!(code(&lba(&["construct", "gm", "--q", "4", "--m", "1"])), 2);
    assert_eq!(code(&lba(&["construct", "gm", "--q", "6"])), 2);
    assert_eq!(code(&lba(&["verify", "nonexistent", "--q", "3"])), 2);
    assert_eq!(code(&lba(&["analyze", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&lba(&["construct"])), 2);
}

#[test]
fn budget_exhaustion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    assert_eq!(code(&lba(&["construct", "gm", "--q", "3", "-o", path_str(&file)])), 0);
    assert_eq!(code(&lba(&["--budget", "5", "analyze", path_str(&file), "--breadth"])), 3);
    let o = Command::new(env!("CARGO_BIN_EXE_lba"))
        .args(["analyze", path_str(&file), "--breadth"])
        .env("LBA_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
}

#[test]
fn reports_are_byte_identical() {
    let a = lba(&["verify", "gm", "--q", "3", "--m", "2", "--seed", "7"]);
    let b = lba(&["verify", "gm", "--q", "3", "--m", "2", "--seed", "7", "--workers", "4"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = lba(&["verify", "gm", "--q", "3", "--m", "2", "--seed", "7"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn extract_recovers_a_field_from_u3() {
    let dir = tempfile::tempdir().unwrap();
    let alg = dir.path().join("u.json");
    let sf = dir.path().join("sf.json");
    assert_eq!(code(&lba(&["construct", "u3", "--q", "3", "--m", "2", "-o", path_str(&alg)])), 0);
    assert_eq!(code(&lba(&["semifield", "extract", path_str(&alg), "--normalize", "-o", path_str(&sf)])), 0);
    let o = lba(&["semifield", "mid", path_str(&sf)]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["size"], 9);
    assert_eq!(v["is_field"], true);
}

#[test]
fn isotopy_check_accepts_and_rejects() {
    let dir = tempfile::tempdir().unwrap();
    let d = dickson(&FieldTower::for_order(9).unwrap(), 1, None).unwrap();
    let pre = d.semifield().pre();
    let f = pre.field();
    let iso = Isotopism {
        a: Matrix::random_invertible(f, 4, 1),
        b: Matrix::random_invertible(f, 4, 2),
        c: Matrix::random_invertible(f, 4, 3),
    };
    let image = apply_isotopism(pre, &iso).unwrap();
    let write = |name: &str, text: String| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let f1 = write("f1.json", io::to_json_string(&io::semifield_to_json(pre, None)));
    let f2 = write("f2.json", io::to_json_string(&io::semifield_to_json(&image, None)));
    let good = write("iso.json", io::to_json_string(&io::isotopism_to_json(pre.tower(), &iso)));
    let swapped = Isotopism { a: iso.b.clone(), b: iso.a.clone(), c: iso.c.clone() };
    let bad = write("bad.json", io::to_json_string(&io::isotopism_to_json(pre.tower(), &swapped)));
    let o = lba(&["semifield", "isotopy-check", path_str(&f1), path_str(&f2), path_str(&good)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let o = lba(&["semifield", "isotopy-check", path_str(&f1), path_str(&f2), path_str(&bad)]);
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["isotopism_valid"], false);
}
