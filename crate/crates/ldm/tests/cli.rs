//! End-to-end tests of the `ldm` binary: exit codes, JSON reports, and
//! file round trips.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ldm(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ldm"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

#[test]
fn construct_verify_spectrum_classify_labelcheck() {
    let dir = tempfile::tempdir().unwrap();
    let out = ldm(
        &[
            "construct",
            "--type",
            "order18",
            "--field",
            "prime:37",
            "-o",
            "m18.json",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rep = stdout_json(&out);
    assert_eq!(rep["ok"], true);
    assert_eq!(rep["order"], 18);
    assert_eq!(rep["spectrum"]["3"], 3);

    let out = ldm(&["verify", "m18.json"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["ok"], true);

    let out = ldm(&["spectrum", "m18.json"], dir.path());
    assert!(out.status.success());
    let rep = stdout_json(&out);
    assert_eq!(rep["lengths"]["3"], 3);
    assert_eq!(rep["lengths"]["1"], 297);

    let out = ldm(&["labelcheck", "m18.json"], dir.path());
    assert!(out.status.success());
    let rep = stdout_json(&out);
    assert_eq!(rep["verdict"], "OBSTRUCTED");
    assert_eq!(rep["quotient_order"], 27);

    let out = ldm(&["latin", "m18.json"], dir.path());
    assert!(out.status.success());
    let rep = stdout_json(&out);
    assert_eq!(rep["undetermined"], 27);
    assert_eq!(rep["square"][0][3], 4);

    let out = ldm(
        &[
            "construct",
            "--type",
            "triangle",
            "--m",
            "4",
            "--field",
            "prime:13",
            "-o",
            "t12.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["order"], 12);

    let out = ldm(&["classify", "t12.json"], dir.path());
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["verdict"], "TRIANGLE");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // no order-12 root of unity in F7
    let out = ldm(
        &[
            "construct",
            "--type",
            "triangle",
            "--m",
            "4",
            "--field",
            "prime:7",
            "-o",
            "x.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));

    // corrupt one coordinate: verification failure is exit 1
    let out = ldm(
        &[
            "construct",
            "--type",
            "triangle",
            "--m",
            "2",
            "--field",
            "prime:13",
            "-o",
            "t6.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let path = dir.path().join("t6.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["components"][2][0] = serde_json::json!(["5", "3", "1"]);
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let out = ldm(&["verify", "t6.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let rep = stdout_json(&out);
    assert_eq!(rep["ok"], false);
    assert_eq!(rep["law"], false);
    assert!(rep["law_witness"].is_array());

    // truncated JSON is a usage error
    std::fs::write(dir.path().join("bad.json"), &text[..40]).unwrap();
    let out = ldm(&["verify", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    // unknown format marker is rejected
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["format"] = serde_json::json!("ldm-99");
    std::fs::write(
        dir.path().join("fmt.json"),
        serde_json::to_string(&v).unwrap(),
    )
    .unwrap();
    let out = ldm(&["verify", "fmt.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn isotope_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = ldm(
        &[
            "construct",
            "--type",
            "conic-line",
            "--m",
            "5",
            "--k",
            "1",
            "--field",
            "prime:31",
            "-o",
            "c10.json",
        ],
        dir.path(),
    );
    assert!(out.status.success());

    // the written file re-serializes byte-identically through the library
    let text = std::fs::read_to_string(dir.path().join("c10.json")).unwrap();
    let back = ldm::io::read_multinet(&text).unwrap();
    assert_eq!(ldm::io::write_multinet(&back), text);

    // find a long line index: records are sorted, so locate length 5
    let records = back.belonging_lines();
    let idx = records.iter().position(|r| r.length == 5).unwrap();
    let u = records[idx].s1[1];
    let v = records[idx].s2[0];
    let out = ldm(
        &[
            "isotope",
            "c10.json",
            "--line",
            &idx.to_string(),
            "--u",
            &u.to_string(),
            "--v",
            &v.to_string(),
            "-o",
            "iso.json",
        ],
        dir.path(),
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let iso_text = std::fs::read_to_string(dir.path().join("iso.json")).unwrap();
    let iso = ldm::io::read_multinet(&iso_text).unwrap();
    assert!(iso.verify().pass());
    assert!(iso.labels().unwrap().identity().is_some());

    // bad line index is a usage error
    let out = ldm(
        &[
            "isotope", "c10.json", "--line", "9999", "--u", "0", "--v", "0", "-o", "x.json",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn determinism_of_seeded_construction() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["a.json", "b.json"] {
        let out = ldm(
            &[
                "construct",
                "--type",
                "tetrahedron",
                "--m",
                "5",
                "--field",
                "prime:31",
                "--face",
                "2",
                "--seed",
                "11",
                "-o",
                name,
            ],
            dir.path(),
        );
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let a = std::fs::read(dir.path().join("a.json")).unwrap();
    let b = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);
}
