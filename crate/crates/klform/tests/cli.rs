//! End-to-end checks of the command-line surface: subcommands, exit codes,
//! output formats, and byte-level determinism.

use std::process::{Command, Output};

fn klform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn degree_steinberg_reports_one_sixth() {
    let out = klform(&["degree", "--type", "A1-sc", "--steinberg", "--q", "2", "--bound", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let report = &doc["reports"][0];
    let degree = report["report"]["degree_numeric"].as_f64().unwrap();
    assert!((degree - 1.0 / 6.0).abs() < 1e-6);
    assert_eq!(doc["schema_version"], "1");
    // Decimals are 12 significant digits; exact values ride along.
    assert_eq!(report["degree_decimal"], "1.66666666667e-1");
    assert!(report["report"]["partial_inverse_degree"]["num"].is_array());
}

#[test]
fn degree_with_gammas_and_central_twist() {
    let out = klform(&[
        "degree",
        "--type",
        "A2-sc",
        "--steinberg",
        "--central-twist",
        "1",
        "--q",
        "2",
        "--bound",
        "16",
        "--gamma-all",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    let verdicts = doc["reports"][0]["report"]["galois_verdicts"].as_array().unwrap();
    assert_eq!(verdicts.len(), 2);
    assert!(verdicts.iter().all(|v| v["termwise_exact_equal"].as_bool().unwrap()));
}

#[test]
fn enumerate_table_json_and_csv() {
    let out = klform(&["enumerate", "--n", "2", "--level", "1"]);
    let doc = stdout_json(&out);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["discrete"], true); // p = (2)
    assert_eq!(rows[1]["discrete"], false); // p = (1,1)

    let out = klform(&["enumerate", "--n", "2", "--level", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("index,n,partition,torsion_level"));
    assert!(text.contains("0,2,2,1,0+0,true,true,1"));
}

#[test]
fn galois_check_passes_and_is_deterministic() {
    let args = ["galois-check", "--n", "2", "--level", "5", "--bound", "30", "--q", "2"];
    let first = klform(&args);
    assert_eq!(first.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(doc["all_ok"], true);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 80);

    let second = klform(&args);
    assert_eq!(first.stdout, second.stdout, "identical config must give identical bytes");
}

#[test]
fn galois_check_config_file() {
    let dir = std::env::temp_dir().join("klform-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("campaign.json");
    std::fs::write(
        &config,
        r#"{"sizes": [2], "torsion_levels": [3], "height_bound": 10, "q0": ["2"]}"#,
    )
    .unwrap();
    let out_path = dir.join("report.json");
    let out = klform(&[
        "galois-check",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["all_ok"], true);
}

#[test]
fn hecke_verify_passes() {
    let out = klform(&["hecke-verify", "--type", "A2-sc", "--bound", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["all_ok"], true);
    let checks = doc["report"]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["name"].as_str().unwrap().contains("braid")));
}

#[test]
fn export_emits_exact_values() {
    let out = klform(&["export", "--n", "2", "--level", "3", "--bound", "8", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 9);
    assert!(entries.iter().any(|e| e["partial_inverse_degree"].is_object()));
    assert!(entries.iter().all(|e| e["central_character_orbit"]["torsion"].is_array()));
}

#[test]
fn degree_accepts_parameter_json() {
    let param = r#"{"n": 2, "partition": [2], "torsion_level": 3, "torsion_num": [1, 1], "rho_dim": 1}"#;
    let out = klform(&["degree", "--param", param, "--q", "2", "--bound", "20"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    // A twisted Steinberg parameter of GL2 projects to the adjoint Steinberg
    // point; on the root lattice the truncated sum inverts to
    // (q-1)/(q+1) = 1/3 at q = 2 (adjoint normalization).
    let degree = doc["reports"][0]["report"]["degree_numeric"].as_f64().unwrap();
    assert!((degree - 1.0 / 3.0).abs() < 1e-5);
}

#[test]
fn guard_and_usage_errors_exit_2() {
    // Enumeration guard.
    let out = klform(&["enumerate", "--n", "9", "--level", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("size guard"));
    // Unknown lattice.
    let out = klform(&["degree", "--type", "A1-xx", "--steinberg", "--q", "2", "--bound", "5"]);
    assert_eq!(out.status.code(), Some(2));
    // Malformed parameter JSON.
    let out = klform(&["degree", "--param", "{broken", "--q", "2", "--bound", "5"]);
    assert_eq!(out.status.code(), Some(2));
    // Clap-level usage error.
    let out = klform(&["no-such-subcommand"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_parameter_is_rejected() {
    // Torsion breaks Ad(s)N = qN along the Jordan string.
    let param = r#"{"n": 2, "partition": [2], "torsion_level": 2, "torsion_num": [1, 0], "rho_dim": 1}"#;
    let out = klform(&["degree", "--param", param, "--q", "2", "--bound", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Ad(s)N = qN"));
}
