//! Exit codes, determinism, and round-trip behavior of the binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qlattice"));
    cmd.env_remove("QLATTICE_TOLERANCE_PROFILE");
    cmd
}

fn tmp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qlattice-cli-test-{tag}-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &std::path::Path, name: &str, contents: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

const FAMILY_OK: &str = r#"{
  "ambient_dim": 3,
  "members": [
    {"spanning_vectors": [[[1,0],[0,0],[0,0]]]},
    {"spanning_vectors": [[[0,0],[1,0],[0,0]]]}
  ]
}"#;

const RHO_OK: &str = r#"{"dim": 3, "pure_state": [[1,0],[1,0],[1,0]]}"#;

#[test]
fn analyze_succeeds_on_valid_input() {
    let dir = tmp_dir("ok");
    let family = write(&dir, "family.json", FAMILY_OK);
    let rho = write(&dir, "rho.json", RHO_OK);
    let out = run(&[
        "analyze",
        "--family",
        family.to_str().unwrap(),
        "--rho",
        rho.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["independence"]["full"], serde_json::Value::Bool(true));
}

#[test]
fn malformed_json_exits_2() {
    let dir = tmp_dir("parse");
    let family = write(&dir, "family.json", "{ not json");
    let rho = write(&dir, "rho.json", RHO_OK);
    let out = run(&[
        "analyze",
        "--family",
        family.to_str().unwrap(),
        "--rho",
        rho.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("family"), "message should name the file: {msg}");
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["analyze", "--family", "/nonexistent.json", "--rho", "/also-missing.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dimension_mismatch_exits_3() {
    let dir = tmp_dir("dim");
    let family = write(&dir, "family.json", FAMILY_OK);
    let rho = write(
        &dir,
        "rho.json",
        r#"{"dim": 4, "pure_state": [[1,0],[0,0],[0,0],[0,0]]}"#,
    );
    let out = run(&[
        "analyze",
        "--family",
        family.to_str().unwrap(),
        "--rho",
        rho.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn improper_member_exits_3_citing_properness() {
    let dir = tmp_dir("proper");
    let family = write(
        &dir,
        "family.json",
        r#"{
          "ambient_dim": 2,
          "members": [
            {"spanning_vectors": [[[1,0],[0,0]]]},
            {"spanning_vectors": [[[1,0],[0,0]], [[0,0],[1,0]]]}
          ]
        }"#,
    );
    let rho = write(&dir, "rho.json", r#"{"dim": 2, "pure_state": [[1,0],[0,0]]}"#);
    let out = run(&[
        "analyze",
        "--family",
        family.to_str().unwrap(),
        "--rho",
        rho.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("properness"), "{msg}");
}

#[test]
fn invalid_density_matrix_exits_4() {
    let dir = tmp_dir("rho4");
    let family = write(&dir, "family.json", FAMILY_OK);
    // Hermitian, trace one, but indefinite.
    let rho = write(
        &dir,
        "rho.json",
        r#"{"dim": 3, "matrix": [
            [[1.5,0],[0,0],[0,0]],
            [[0,0],[-0.5,0],[0,0]],
            [[0,0],[0,0],[0,0]]
        ]}"#,
    );
    let out = run(&[
        "analyze",
        "--family",
        family.to_str().unwrap(),
        "--rho",
        rho.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn unknown_example_exits_2_and_lists_names() {
    let out = run(&["example", "no-such-example"]);
    assert_eq!(out.status.code(), Some(2));
    let msg = String::from_utf8_lossy(&out.stderr);
    for name in [
        "independence-h6",
        "totalness-h6",
        "position",
        "position-momentum",
        "coherent",
    ] {
        assert!(msg.contains(name), "available list should include {name}: {msg}");
    }
}

#[test]
fn unknown_tolerance_profile_exits_2() {
    let out = bin()
        .env("QLATTICE_TOLERANCE_PROFILE", "bogus")
        .args(["example", "position", "--d", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn named_tolerance_profile_accepted() {
    let out = bin()
        .env("QLATTICE_TOLERANCE_PROFILE", "strict")
        .args(["example", "position", "--d", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn even_dimension_coherent_exits_3() {
    let out = run(&["system", "coherent", "--d", "4"]);
    assert_eq!(out.status.code(), Some(3));
    let msg = String::from_utf8_lossy(&out.stderr);
    assert!(msg.contains("odd"), "{msg}");
}

#[test]
fn pentagram_default_and_mixed() {
    let out = run(&["pentagram"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let sum = report["sum_R"].as_f64().unwrap();
    assert!((sum - 2.185).abs() <= 5e-3);
    assert_eq!(report["classical_bound"]["satisfied"], serde_json::Value::Bool(false));
    assert_eq!(report["quantum_bound"]["satisfied"], serde_json::Value::Bool(true));

    let dir = tmp_dir("pent");
    let third = 1.0 / 3.0;
    let rho = write(
        &dir,
        "rho.json",
        &format!(
            r#"{{"dim": 3, "matrix": [
              [[{third},0],[0,0],[0,0]],
              [[0,0],[{third},0],[0,0]],
              [[0,0],[0,0],[{third},0]]
            ]}}"#
        ),
    );
    let out = run(&["pentagram", "--rho", rho.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let sum = report["sum_R"].as_f64().unwrap();
    assert!((sum - 5.0 / 3.0).abs() <= 1e-9);
    // a violation is a finding, not an error
    assert_eq!(report["classical_bound"]["satisfied"], serde_json::Value::Bool(true));

    let out = run(&["pentagram", "--rho", "/missing.json"]);
    assert_eq!(out.status.code(), Some(2));

    let bad = write(&dir, "bad.json", r#"{"dim": 4, "pure_state": [[1,0],[0,0],[0,0],[0,0]]}"#);
    let out = run(&["pentagram", "--rho", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for args in [
        vec!["example", "independence-h6"],
        vec!["example", "totalness-h6"],
        vec!["example", "coherent", "--d", "3"],
        vec!["pentagram"],
        vec!["system", "position-momentum", "--d", "5"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert!(first.status.success());
        assert_eq!(first.stdout, second.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn emitted_family_round_trips_to_identical_report() {
    for d in [3usize, 5] {
        let dir = tmp_dir(&format!("roundtrip{d}"));
        let family_path = dir.join("emitted.family.json");
        let d_text = d.to_string();
        let direct = bin()
            .args([
                "system",
                "coherent",
                "--d",
                &d_text,
                "--emit-family",
                family_path.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(direct.status.success());

        // The maximally mixed state, spelled out as a matrix document.
        let w = 1.0 / d as f64;
        let rows: Vec<String> = (0..d)
            .map(|r| {
                let cells: Vec<String> = (0..d)
                    .map(|c| {
                        if r == c {
                            format!("[{w},0]")
                        } else {
                            "[0,0]".to_string()
                        }
                    })
                    .collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        let rho = write(
            &dir,
            "rho.json",
            &format!(r#"{{"dim": {d}, "matrix": [{}]}}"#, rows.join(",")),
        );
        let reloaded = run(&[
            "analyze",
            "--family",
            family_path.to_str().unwrap(),
            "--rho",
            rho.to_str().unwrap(),
        ]);
        assert!(reloaded.status.success());
        assert_eq!(
            direct.stdout, reloaded.stdout,
            "serialized family must classify identically after reloading (d = {d})"
        );
    }
}

#[test]
fn example_matches_analyze_on_fixture_files() {
    // The embedded fixtures are the same documents shipped in the repo;
    // running analyze on them must give byte-identical output.
    let fixtures = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let via_example = run(&["example", "independence-h6"]);
    let via_analyze = run(&[
        "analyze",
        "--family",
        fixtures.join("independence_h6.family.json").to_str().unwrap(),
        "--rho",
        fixtures.join("independence_h6.rho.json").to_str().unwrap(),
    ]);
    assert!(via_example.status.success() && via_analyze.status.success());
    assert_eq!(via_example.stdout, via_analyze.stdout);
}

#[test]
fn fiducial_file_controls_the_coherent_system() {
    let dir = tmp_dir("fid");
    // sqrt-weighted entries, normalized: (0.6, 0.48i, 0.64)
    let fiducial = write(
        &dir,
        "fiducial.json",
        r#"[[0.6,0.0],[0.0,0.48],[0.64,0.0]]"#,
    );
    let out = run(&[
        "system",
        "coherent",
        "--d",
        "3",
        "--fiducial-file",
        fiducial.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    // Wrong length is a validation error.
    let short = write(&dir, "short.json", r#"[[1.0,0.0],[0.0,0.0]]"#);
    let out = run(&[
        "system",
        "coherent",
        "--d",
        "3",
        "--fiducial-file",
        short.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn out_flag_writes_report_file() {
    let dir = tmp_dir("out");
    let path = dir.join("report.json");
    let out = run(&["example", "position", "--d", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["independence"]["full"], serde_json::Value::Bool(true));
}

#[test]
fn example_position_d5_is_fully_independent() {
    let out = run(&["example", "position", "--d", "5"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["independence"]["full"], serde_json::Value::Bool(true));
    assert_eq!(report["eta"].as_f64().unwrap(), 0.0);
    for row in report["A"].as_array().unwrap() {
        for entry in row.as_array().unwrap() {
            assert_eq!(entry[0].as_f64().unwrap(), 0.0);
            assert_eq!(entry[1].as_f64().unwrap(), 0.0);
        }
    }
}

#[test]
fn example_coherent_d3_has_eta_one_third() {
    let out = run(&["example", "coherent", "--d", "3"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["independence"]["pairwise"], serde_json::Value::Bool(true));
    assert_eq!(report["independence"]["full"], serde_json::Value::Bool(false));
    let eta = report["eta"].as_f64().unwrap();
    assert!((eta - 1.0 / 3.0).abs() <= 1e-9, "eta = {eta}");
}

#[test]
fn table_format_renders() {
    let out = run(&["example", "totalness-h6", "--format", "table"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("epsilon = 0.222"), "{text}");
    assert!(text.contains("profile"), "{text}");
}
