//! End-to-end runs of the `engel` binary: report determinism, cache reuse,
//! exit codes, and the graph/scc round trip.

use std::path::PathBuf;
use std::process::Command;

fn engel() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_engel"));
    c.env_remove("ENGEL_CACHE_DIR");
    c
}

fn tempdir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("engel-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    std::fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn group_info_psl2_7() {
    let out = engel().args(["group", "PSL2:7"]).output().unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["order"], 168);
    assert_eq!(doc["spectrum"], serde_json::json!([1, 2, 3, 4, 7]));
    assert_eq!(doc["prime_graph"]["components"].as_array().unwrap().len(), 3);
    assert_eq!(doc["hypercenter_order"], 1);
}

#[test]
fn bad_descriptor_fails() {
    let out = engel().args(["group", "PSL2:six"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graph_scc_roundtrip_via_files() {
    let dir = tempdir("roundtrip");
    let graph_file = dir.join("g.json");
    let out = engel()
        .args([
            "graph",
            "PSL2:5",
            "engel:2",
            "--scc",
            "--out",
            graph_file.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value =
        serde_json::from_slice(&std::fs::read(&graph_file).unwrap()).unwrap();
    let count = doc["scc"]["count"].as_u64().unwrap();
    // re-import through the scc subcommand: identical component count
    let out2 = engel()
        .args(["scc", "--input", graph_file.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out2.status.success());
    let doc2: serde_json::Value = serde_json::from_slice(&out2.stdout).unwrap();
    assert_eq!(doc2["scc"]["count"].as_u64().unwrap(), count);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn witness_exit_codes() {
    let ok = engel().args(["witness", "nr1", "--q", "13"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    // q = 9 has no witness: found = false surfaces as exit 1
    let no = engel().args(["witness", "nr1", "--q", "9"]).output().unwrap();
    assert_eq!(no.status.code(), Some(1));
}

#[test]
fn classify_cross_validate_exit() {
    let out = engel()
        .args(["classify", "PSL2:11", "engel:2", "--cross-validate"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["agree"], true);
}

#[test]
fn verify_filter_and_exit() {
    let out = engel()
        .args(["verify", "--suite", "witness", "--filter", "nr1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[PASS] nr1.q13"));
    assert!(text.contains("suite witness: PASS"));
}

#[test]
fn cache_gives_identical_reports() {
    let dir = tempdir("cache");
    let cache_dir = dir.join("cache");
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    let c = dir.join("c.json");
    // cold cache
    let run = |out: &PathBuf, cache: Option<&PathBuf>| {
        let mut cmd = engel();
        cmd.args(["graph", "PSL2:7", "engel:2", "--scc", "--out", out.to_str().unwrap()]);
        if let Some(cd) = cache {
            cmd.args(["--cache-dir", cd.to_str().unwrap()]);
        }
        let st = cmd.output().unwrap();
        assert!(st.status.success(), "{}", String::from_utf8_lossy(&st.stderr));
    };
    run(&a, Some(&cache_dir));
    assert!(std::fs::read_dir(&cache_dir).unwrap().count() >= 2);
    // warm cache and cache-disabled runs must agree byte for byte
    run(&b, Some(&cache_dir));
    run(&c, None);
    let (da, db, dc) = (
        std::fs::read(&a).unwrap(),
        std::fs::read(&b).unwrap(),
        std::fs::read(&c).unwrap(),
    );
    assert_eq!(da, db);
    assert_eq!(da, dc);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn verify_reports_are_deterministic() {
    let dir = tempdir("determinism");
    let (a, b) = (dir.join("a.json"), dir.join("b.json"));
    for f in [&a, &b] {
        let out = engel()
            .args([
                "verify",
                "--suite",
                "delta",
                "--filter",
                "psl2_8",
                "--out",
                f.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
    }
    let ra: engel_cli::report::SuiteReport =
        serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    let rb: engel_cli::report::SuiteReport =
        serde_json::from_slice(&std::fs::read(&b).unwrap()).unwrap();
    // identical modulo the runtime field, which lives separately
    assert_eq!(ra.stable_json(), rb.stable_json());
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn dot_export_small_graph() {
    let dir = tempdir("dot");
    let dot = dir.join("g.dot");
    let out = engel()
        .args([
            "graph",
            "Sym:3",
            "commuting",
            "--dot",
            dot.to_str().unwrap(),
            "--out",
            dir.join("g.json").to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn delta_single_instance() {
    let out = engel()
        .args([
            "delta",
            "--group",
            "PSL2:8",
            "--h",
            "borel",
            "--torus",
            "9",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc[0]["report"]["vertex_count"], 224);
}
