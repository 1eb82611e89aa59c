use std::fs;
use std::process::{Command, Output};

use filiform_core::cohomology::{z02_component, Cochain2, Part};
use filiform_core::families::rho_ks;
use filiform_core::SuperAlgebra;
use serde_json::Value;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_filiform-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

#[test]
fn dump_round_trips_byte_for_byte() {
    let first = lab(&["lnm", "--n", "4", "--m", "3", "dump", "--format", "json"]);
    assert!(first.status.success());
    let text = stdout(&first);
    let reparsed = SuperAlgebra::from_json(&text).unwrap().to_json();
    assert_eq!(reparsed, text.trim_end());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l43.json");
    fs::write(&path, &text).unwrap();
    let second = lab(&["lnm", "--input", path.to_str().unwrap(), "dump", "--format", "json"]);
    assert!(second.status.success());
    assert_eq!(stdout(&second), text);
}

#[test]
fn dump_stores_only_canonical_pairs() {
    let v = json(&lab(&["lnm", "--n", "3", "--m", "2", "dump", "--format", "json"]));
    assert!(v["C"].as_array().unwrap().iter().all(|e| e["i"].as_u64() < e["j"].as_u64()));
    assert!(v["E"].as_array().unwrap().is_empty());
    assert_eq!(v["D"].as_array().unwrap().len(), 1);
}

#[test]
fn info_reports_filiform_model() {
    let v = json(&lab(&["lnm", "--n", "5", "--m", "3", "--format", "json"]));
    assert_eq!(v["nilindex"], serde_json::json!([5, 3]));
    assert_eq!(v["filiform"], Value::Bool(true));
    assert_eq!(v["adapted_basis"], Value::Bool(true));
}

#[test]
fn verify_emits_conformance_report() {
    let out = lab(&["verify", "--n", "3", "--m", "2", "--format", "json"]);
    let v = json(&out);
    let claims = v["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 12);
    let dim_e = claims.iter().find(|c| c["claim_id"] == "dim-e-span").unwrap();
    assert_eq!(dim_e["predicted"], 4);
    assert_eq!(dim_e["verdict"], "match");
    assert_eq!(v["readings"]["psi_superscript"], "k-i");
    // The report contains mismatches on L(3,2), so the exit code says so.
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_handles_degenerate_ranges() {
    let v = json(&lab(&["verify", "--n", "2", "--m", "1", "--format", "json"]));
    let aps = v["claims"].as_array().unwrap().iter().find(|c| c["claim_id"] == "nonempty-aps").unwrap().clone();
    assert_eq!(aps["predicted"], serde_json::json!([]));
}

#[test]
fn z2_odd_block_matches_library() {
    let v = json(&lab(&["z2", "--n", "4", "--m", "3", "--part", "b", "--format", "json"]));
    let want = z02_component(&SuperAlgebra::model(4, 3), Part::B).unwrap();
    assert_eq!(v["dim"], want.dim());
    let basis = v["basis"].as_array().unwrap();
    assert_eq!(basis.len(), want.dim());
    for c in basis {
        Cochain2::from_json(4, 3, &c.to_string()).unwrap();
    }
}

#[test]
fn z2_with_h_and_csv() {
    let v = json(&lab(&["z2", "--n", "3", "--m", "2", "--with-h", "--format", "json"]));
    let h = &v["h02"];
    assert_eq!(h["h"].as_u64().unwrap() + h["b"].as_u64().unwrap(), h["z"].as_u64().unwrap());
    let csv = stdout(&lab(&["z2", "--n", "3", "--m", "2", "--part", "psi", "--format", "csv"]));
    assert_eq!(csv.lines().next(), Some("cocycle,block,arguments,value"));
}

#[test]
fn bounds_needs_m_at_least_n() {
    let out = lab(&["bounds", "--n", "5", "--m", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m >= n"));

    let out = lab(&["bounds", "--n", "4", "--m", "4", "--format", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["bound"], 7);
    assert_eq!(v["verdict"], "bound-satisfied");
}

#[test]
fn families_single_member_and_listing() {
    let v =
        json(&lab(&["families", "--n", "4", "--m", "2", "--kind", "psi", "--k", "1", "--s", "3", "--format", "json"]));
    assert_eq!(v["members"][0]["cocycle"], Value::Bool(true));
    assert_eq!(v["members"][0]["name"], "Psi_{1,3}");

    assert!(lab(&["families", "--n", "3", "--m", "2", "--kind", "varrho"]).status.success());
    // rho_{2,1} is not a cocycle, so the listing reports a mismatch.
    assert_eq!(lab(&["families", "--n", "3", "--m", "2", "--kind", "rho"]).status.code(), Some(1));
    assert!(lab(&["families", "--n", "3", "--m", "2", "--kind", "f"]).status.success());
}

#[test]
fn aps_records() {
    let v = json(&lab(&["aps", "--n", "3", "--m", "2", "--format", "json"]));
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 6);
    let r = json(&lab(&["aps", "--n", "3", "--m", "2", "--p", "1", "--s", "2", "--format", "json"]));
    assert_eq!(r["records"][0]["alpha_zero"], Value::Bool(true));
}

#[test]
fn deform_reports_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.json");
    fs::write(&path, rho_ks(3, 2, 1, 2).unwrap().to_json()).unwrap();
    let out =
        lab(&["deform", "--n", "3", "--m", "2", "--phi", path.to_str().unwrap(), "--order", "3", "--format", "json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    for key in ["jacobi", "first_order", "filiform_constraints", "condition_N", "nilindex"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["first_order"], Value::Bool(true));
    assert_eq!(v["residuals"].as_array().unwrap().len(), 3);
}

#[test]
fn deform_rejects_malformed_phi() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.json");
    fs::write(&path, r#"{"psi":[{"i":2,"j":1,"target":"X3","v":"1"}],"rho":[],"b":[]}"#).unwrap();
    let out = lab(&["deform", "--n", "3", "--m", "2", "--phi", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_and_size_guard() {
    assert_eq!(lab(&["z2", "--n", "3", "--m", "2", "--bogus"]).status.code(), Some(2));
    assert_eq!(lab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lab(&["z2", "--n", "3", "--m", "2", "--limit", "10"]).status.code(), Some(3));
    assert!(lab(&["z2", "--n", "3", "--m", "2", "--limit", "10", "--force"]).status.success());
}

#[test]
fn props_are_seeded() {
    let a = lab(&["props", "--n", "3", "--m", "2", "--samples", "10", "--seed", "7", "--format", "json"]);
    let b = lab(&["props", "--n", "3", "--m", "2", "--samples", "10", "--seed", "7", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["dd_failures"], 0);
}

#[test]
fn thread_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_filiform-lab"))
        .args(["bounds", "--n", "3", "--m", "4", "--format", "json"])
        .env("FILIFORM_LAB_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
}
