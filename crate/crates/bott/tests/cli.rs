//! End-to-end tests of the `bott` binary: JSON file interfaces, output
//! formats and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bott"))
}

struct Fixtures {
    dir: PathBuf,
}

impl Fixtures {
    fn new(tag: &str) -> Fixtures {
        let dir = std::env::temp_dir().join(format!(
            "bott-cli-{}-{}",
            std::process::id(),
            tag
        ));
        std::fs::create_dir_all(&dir).unwrap();
        Fixtures { dir }
    }

    fn write(&self, name: &str, content: &str) -> PathBuf {
        let path = self.dir.join(name);
        std::fs::write(&path, content).unwrap();
        path
    }

    fn product2(&self) -> PathBuf {
        self.write("o2.json", r#"{"n":2,"entries":[[0,0],[0,0]]}"#)
    }

    fn hirzebruch(&self) -> PathBuf {
        self.write("h.json", r#"{"n":2,"entries":[[0,1],[0,0]]}"#)
    }

    fn even2(&self) -> PathBuf {
        self.write("e2.json", r#"{"n":2,"entries":[[0,2],[0,0]]}"#)
    }

    fn stage3_ones(&self) -> PathBuf {
        self.write(
            "a3.json",
            r#"{"n":3,"entries":[[0,0,1],[0,0,1],[0,0,0]]}"#,
        )
    }
}

impl Drop for Fixtures {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn ring_prints_normal_forms() {
    let fx = Fixtures::new("ring");
    let h = fx.hirzebruch();
    let out = bin().args(["ring"]).arg(&h).arg("x2^2").output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_str(&out).trim(), "x1*x2");

    let out = bin().args(["ring"]).arg(&h).arg("x1^2").output().unwrap();
    assert_eq!(stdout_str(&out).trim(), "0");

    let a3 = fx.stage3_ones();
    let out = bin()
        .args(["ring"])
        .arg(&a3)
        .arg("(x1+x2)^2")
        .output()
        .unwrap();
    assert_eq!(stdout_str(&out).trim(), "2*x1*x2");

    // invalid input exits 2
    let out = bin().args(["ring"]).arg(&h).arg("x9").output().unwrap();
    assert_eq!(code(&out), 2);
    let out = bin().args(["ring"]).arg(&h).arg("x1 +").output().unwrap();
    assert_eq!(code(&out), 2);
    let missing = fx.dir.join("missing.json");
    let out = bin()
        .args(["ring"])
        .arg(&missing)
        .arg("x1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn ring_rejects_invalid_matrix_files() {
    let fx = Fixtures::new("badmat");
    let bad = fx.write("bad.json", r#"{"n":2,"entries":[[0,1],[1,0]]}"#);
    let out = bin().args(["ring"]).arg(&bad).arg("x1").output().unwrap();
    assert_eq!(code(&out), 2);
    let garbage = fx.write("garbage.json", "not json");
    let out = bin()
        .args(["ring"])
        .arg(&garbage)
        .arg("x1")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn pontrjagin_output() {
    let fx = Fixtures::new("pont");
    let a3 = fx.stage3_ones();
    let out = bin().args(["pontrjagin"]).arg(&a3).output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_str(&out).trim(), "1 + 2*x1*x2");

    let out = bin()
        .args(["pontrjagin"])
        .arg(&a3)
        .arg("--json")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["terms"][1]["num"], 2);
}

#[test]
fn iso_exit_codes_and_counts() {
    let fx = Fixtures::new("iso");
    let o2 = fx.product2();
    let h = fx.hirzebruch();

    let out = bin()
        .args(["iso"])
        .arg(&o2)
        .arg(&o2)
        .args(["--json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["summary"]["count"], 8);

    let out = bin()
        .args(["iso"])
        .arg(&o2)
        .arg(&h)
        .args(["--json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["summary"]["count"], 0);
    assert_eq!(v["summary"]["isomorphic"], false);

    // stage mismatch is an input error
    let a3 = fx.stage3_ones();
    let out = bin().args(["iso"]).arg(&o2).arg(&a3).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn iso_certify_splits_hirzebruch_automorphisms() {
    let fx = Fixtures::new("cert");
    let h = fx.hirzebruch();
    let out = bin()
        .args(["iso"])
        .arg(&h)
        .arg(&h)
        .args(["--certify", "--json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["summary"]["count"], 8);
    assert_eq!(v["summary"]["certified"], 4);
    assert_eq!(v["summary"]["not_covered"], 4);
}

#[test]
fn certify_command_even_pair() {
    let fx = Fixtures::new("certeven");
    let e2 = fx.even2();
    let o2 = fx.product2();
    let out = bin()
        .args(["certify"])
        .arg(&e2)
        .arg(&o2)
        .args(["--json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["summary"]["not_covered"], 0);
    assert!(v["summary"]["certified"].as_u64().unwrap() > 0);
    let factors = v["certificates"][0]["certificate"]["factors"]
        .as_array()
        .unwrap();
    assert!(!factors.is_empty());
}

#[test]
fn normalize_reports_steps() {
    let fx = Fixtures::new("norm");
    let e2 = fx.even2();
    let out = bin()
        .args(["normalize"])
        .arg(&e2)
        .args(["--json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 1);
    assert_eq!(v["normalized"]["entries"][0][1], 0);
    assert_eq!(v["steps"][0]["c"], 2);
}

#[test]
fn aut_counts() {
    let fx = Fixtures::new("aut");
    let h = fx.hirzebruch();
    let out = bin()
        .args(["aut"])
        .arg(&h)
        .args(["--json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["summary"]["count"], 8);
    assert_eq!(v["automorphisms"].as_array().unwrap().len(), 8);
}

#[test]
fn scan_is_deterministic_across_jobs_and_flags_violations() {
    let run_scan = |jobs: &str| {
        bin()
            .args([
                "scan", "--n", "2", "--bound", "1", "--checks", "pontrjagin,certify",
                "--jobs", jobs, "--json",
            ])
            .output()
            .unwrap()
    };
    let one = run_scan("1");
    let four = run_scan("4");
    assert_eq!(code(&one), 0);
    assert_eq!(stdout_str(&one), stdout_str(&four));
    let v: serde_json::Value = serde_json::from_str(stdout_str(&one).trim()).unwrap();
    assert_eq!(v["totals"]["matrices"], 3);
    assert_eq!(v["totals"]["pairs"], 9);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);

    // a tiny budget refuses the scan with an input error
    let out = bin()
        .args(["scan", "--n", "3", "--bound", "2", "--budget", "10"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn scan_even_only_family() {
    let out = bin()
        .args([
            "scan", "--n", "2", "--bound", "2", "--parity", "even-only", "--checks",
            "certify", "--json",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["totals"]["matrices"], 3);
    assert_eq!(v["not_covered"], 0);
}

#[test]
fn oracle_commands_agree() {
    let fx = Fixtures::new("oracle");
    let h = fx.hirzebruch();
    let o2 = fx.product2();

    let out = bin()
        .args(["oracle", "square-zero"])
        .arg(&h)
        .args(["--json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["agree"], true);

    let out = bin()
        .args(["oracle", "vanishing-pairs"])
        .arg(&h)
        .args(["--box", "3", "--json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["failures"], 0);

    let out = bin()
        .args(["oracle", "isos"])
        .arg(&h)
        .arg(&o2)
        .args(["--json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["structured"], 0);

    let out = bin()
        .args(["oracle", "confluence"])
        .arg(&h)
        .args(["--trials", "50", "--json"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["failures"], 0);
}

#[test]
fn large_entries_survive_the_wire() {
    let fx = Fixtures::new("big");
    let big = fx.write(
        "big.json",
        r#"{"n":2,"entries":[[0,"123456789012345678901234567890"],[0,0]]}"#,
    );
    let out = bin()
        .args(["ring"])
        .arg(&big)
        .arg("x2^2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout_str(&out).trim(),
        "123456789012345678901234567890*x1*x2"
    );
    let out = bin()
        .args(["ring"])
        .arg(&big)
        .arg("x2^2")
        .args(["--json"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(stdout_str(&out).trim()).unwrap();
    assert_eq!(v["terms"][0]["num"], "123456789012345678901234567890");
}
