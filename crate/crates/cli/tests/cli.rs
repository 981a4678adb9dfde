use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_confmodel")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let (code, out, err) = run(&a);
    assert!(!out.is_empty(), "no report: {err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn diagonal_of_the_sphere() {
    let (code, out, _) = run(&["pd", "diagonal", "--builtin", "sphere:2"]);
    assert_eq!(code, 0);
    assert!(out.contains("diagonal: 1⊗υ + υ⊗1"), "{out}");
}

#[test]
fn euler_characteristic_of_a_product() {
    let (code, j) = json(&["pd", "euler", "--builtin", "product:sphere:2,sphere:3"]);
    assert_eq!(code, 0);
    assert_eq!(j["results"]["chi"], 0);
    assert_eq!(j["schema_version"], 1);
}

#[test]
fn degenerate_pairing_fails_verification() {
    let (code, j) = json(&["pd", "verify", "--file", &data("broken.json")]);
    assert_eq!(code, 1);
    assert_eq!(j["passed"], false);
    assert!(j["results"]["failed_identity"].as_str().unwrap().contains("nondegenerate"));
    // Any other command refuses the algebra outright.
    let (code, _, err) = run(&["ls", "betti", "--file", &data("broken.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("nondegenerate"), "{err}");
}

#[test]
fn parse_errors_report_the_position() {
    let dir = std::env::temp_dir().join(format!("confmodel-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("bad.json");
    std::fs::write(&p, "{\n  \"format\": 1,\n  \"name\": ,\n}").unwrap();
    let (code, _, err) = run(&["pd", "verify", "--file", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
    let (code, _, err) = run(&["pd", "verify", "--file", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("missing.json"), "{err}");
}

#[test]
fn ls_betti_and_s3check() {
    let (code, j) = json(&["ls", "betti", "--builtin", "sphere:3", "-k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(j["results"]["betti"], serde_json::json!([[0, 1], [2, 1], [3, 1], [5, 1]]));
    let (code, j) = json(&["ls", "s3check", "-k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(j["results"]["quasi_isomorphism"], true);
    let (code, _, _) = run(&["ls", "s3check", "--builtin", "sphere:2", "-k", "2"]);
    assert_eq!(code, 2);
}

#[test]
fn comodule_check_needs_zero_euler_characteristic() {
    let (code, out, err) = run(&["ls", "comodule-check", "--builtin", "sphere:2", "-k", "3"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("χ = 2"), "{err}");
    let (code, j) = json(&["ls", "comodule-check", "--builtin", "sphere:3", "-k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(j["results"]["chain_map_failures"], 0);
}

#[test]
fn caps_apply_unless_lifted() {
    let (code, _, err) = run(&["ls", "betti", "-k", "7"]);
    assert_eq!(code, 2);
    assert!(err.contains("cap 6"), "{err}");
    let (code, _, _) = run(&["graphs", "d2", "--n", "2", "--max-edges", "7"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["ce", "pair-check", "-k", "5"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["--no-caps", "ls", "betti", "--builtin", "point", "-k", "7"]);
    assert_eq!(code, 0);
}

#[test]
fn unknown_inputs_are_input_errors() {
    for args in [
        &["pd", "verify", "--builtin", "torus"][..],
        &["graphs", "d2", "--n", "2", "--flavor", "graphs_x"],
        &["graphs", "d2", "--n", "3", "--builtin", "sphere:2"],
        &["ce", "homology", "--lie", "so3"],
        &["ce", "homology"],
        &["framed", "betti", "--builtin", "sphere:4"],
        &["pd", "frobnicate"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}: {err}");
    }
}

#[test]
fn graph_commands() {
    let (code, j) = json(&["graphs", "d2", "--n", "3", "--max-internal", "2", "--max-edges", "5", "--builtin", "sphere:3"]);
    assert_eq!(code, 0);
    assert_eq!(j["config"]["flavor"], "graphs_A");
    assert_eq!(j["results"]["failures"], 0);
    let (code, j) = json(&["graphs", "chainmap", "--n", "4", "--max-internal", "1", "--max-edges", "3"]);
    assert_eq!(code, 0);
    assert_eq!(j["config"]["flavor"], "graphs_n");
    let (code, j) = json(&["graphs", "audit", "--n", "4", "--max-vertices", "5", "--builtin", "sphere:4"]);
    assert_eq!(code, 0);
    assert!(j["results"]["min_degree"].as_i64().unwrap() > 0);
    let (code, j) = json(&["graphs", "audit", "--n", "3", "--max-vertices", "4", "--builtin", "sphere:3"]);
    assert_eq!(code, 0);
    assert_eq!(j["results"]["theta_witness"], true);
}

#[test]
fn export_writes_sparse_matrices() {
    let p = std::env::temp_dir().join(format!("confmodel-export-{}.json", std::process::id()));
    let (code, _, err) = run(&[
        "graphs", "export", "--builtin", "sphere:2", "--externals", "2", "--max-internal", "1", "--max-edges", "3", "--out",
        p.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let degrees = doc["degrees"].as_array().unwrap();
    assert!(!degrees.is_empty());
    let mut nonzero = 0;
    for (i, d) in degrees.iter().enumerate() {
        let m = &d["differential"];
        assert_eq!(m["cols"].as_u64().unwrap() as usize, d["basis"].as_array().unwrap().len());
        if let Some(next) = degrees.get(i + 1).filter(|n| n["degree"].as_i64() == Some(d["degree"].as_i64().unwrap() + 1)) {
            assert_eq!(m["rows"].as_u64().unwrap() as usize, next["basis"].as_array().unwrap().len());
        }
        for e in m["entries"].as_array().unwrap() {
            assert!(e[2].is_string());
            nonzero += 1;
        }
    }
    assert!(nonzero > 0);
    let _ = std::fs::remove_file(p);
}

#[test]
fn framed_and_ce_commands() {
    let (code, j) = json(&["framed", "betti", "-k", "1"]);
    assert_eq!(code, 0);
    assert_eq!(j["results"]["betti"], serde_json::json!([[0, 1], [3, 1]]));
    let (code, j) = json(&["framed", "d2", "-k", "3"]);
    assert_eq!(code, 0);
    assert_eq!(j["results"]["arities"].as_array().unwrap().len(), 4);
    let (code, _) = json(&["ce", "pair-check", "--builtin", "sphere:3", "-k", "2"]);
    assert_eq!(code, 0);
    // Symmetric algebra on A ⊗ x, truncated at word length 2.
    let (code, j) = json(&["ce", "homology", "--builtin", "sphere:2", "--lie", "abelian:1", "--cap", "2"]);
    assert_eq!(code, 0);
    assert_eq!(j["results"]["homology"], serde_json::json!([[-1, 1], [0, 2], [1, 1]]));
    let (code, j) = json(&["ce", "homology", "--builtin", "sphere:2", "--lie-file", &data("sl2.json"), "--cap", "2"]);
    assert_eq!(code, 0);
    let (_, k) = json(&["ce", "homology", "--builtin", "sphere:2", "--lie", "sl2", "--cap", "2"]);
    assert_eq!(j["results"], k["results"]);
}

#[test]
fn timing_only_on_request() {
    let (_, j) = json(&["pd", "euler"]);
    assert!(j.get("timing_ms").is_none());
    let (_, j) = json(&["--timing", "pd", "euler"]);
    assert!(j["timing_ms"].is_u64());
}

#[test]
fn text_and_json_agree() {
    let (_, text, _) = run(&["ce", "pair-check", "--builtin", "cp:2", "-k", "2"]);
    let (_, j) = json(&["ce", "pair-check", "--builtin", "cp:2", "-k", "2"]);
    for b in j["results"]["blocks"].as_array().unwrap() {
        let line = format!("degree={}, ls_dim={}, ce_dim={}, rank={}", b["degree"], b["ls_dim"], b["ce_dim"], b["rank"]);
        assert!(text.contains(&line), "{line} not in {text}");
    }
    assert!(text.contains(j["summary"].as_str().unwrap()));
}
