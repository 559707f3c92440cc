use reflexa_cli::{invoke, parse_workspace, Command};

fn run(args: &[&str]) -> reflexa_cli::Invocation {
    invoke(std::iter::once("reflexa").chain(args.iter().copied()))
}

fn json(inv: &reflexa_cli::Invocation) -> serde_json::Value {
    serde_json::from_str(&inv.stdout).unwrap_or_else(|e| panic!("{e}: {}{}", inv.stdout, inv.stderr))
}

const KA2: &str = r#"{
  "algebras": {
    "A": {
      "field": "F2",
      "quiver": { "vertices": 2, "arrows": [{ "name": "a", "src": 1, "dst": 2 }] },
      "relations": []
    }
  }
}"#;

#[test]
fn minimal_workspace_parses() {
    let ws = parse_workspace(KA2).unwrap();
    assert_eq!(ws.algebras.len(), 1);
    assert_eq!(ws.algebras["A"].dim(), 3);
}

#[test]
fn unresolved_algebra_reference() {
    let text = r#"{
  "modules": {
    "M": { "algebra": "B", "dims": { "1": 1 } }
  }
}"#;
    let diags = parse_workspace(text).unwrap_err();
    assert_eq!(diags.len(), 1);
    assert!(diags[0].message.starts_with("unresolved algebra reference"), "{}", diags[0]);
    assert_eq!((diags[0].line, diags[0].column), (3, 23));
}

#[test]
fn short_relations_are_rejected() {
    let text = r#"{
  "algebras": {
    "A": {
      "field": "F2",
      "quiver": { "vertices": 1, "arrows": [{ "name": "x", "src": 1, "dst": 1 }] },
      "relations": [["x"]]
    }
  }
}"#;
    let diags = parse_workspace(text).unwrap_err();
    assert_eq!(diags[0].message, "relations must have length ≥ 2");
    assert_eq!((diags[0].line, diags[0].column), (6, 21));
}

#[test]
fn malformed_input_gives_diagnostics() {
    for text in ["", "{", "[]", "{\"algebras\": 3}", "{\"jobs\": [{\"command\": \"nope\"}]}", "{\"algebras\": {\"A\": {\"field\": \"F4\"}}}"] {
        let diags = parse_workspace(text).unwrap_err();
        assert!(!diags.is_empty() && diags.iter().all(|d| d.line >= 1 && d.column >= 1), "{text}");
    }
    let diags = parse_workspace("{\n  \"algebras\": {,\n}").unwrap_err();
    assert_eq!(diags[0].line, 2);
}

#[test]
fn modules_from_arrows_and_from_basis_actions() {
    let text = r#"{
  "algebras": {
    "A": {
      "field": "F3",
      "quiver": { "vertices": 2, "arrows": [{ "name": "a", "src": 1, "dst": 2 }] }
    },
    "D": {
      "field": "Q",
      "basis": ["1", "x"],
      "table": [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]],
      "unit": ["1", "0"],
      "idempotents": [["1", "0"]]
    }
  },
  "modules": {
    "P1": { "algebra": "A", "dims": { "1": 1, "2": 1 }, "actions": { "a": [["1"]] } },
    "S1": { "algebra": "A", "dims": { "1": 1 } },
    "R": { "algebra": "D", "total": 2, "actions": { "1": [["1", "0"], ["0", "1"]], "x": [["0", "1"], ["0", "0"]] } }
  },
  "maps": {
    "p": { "source": "P1", "target": "S1", "matrix": [["1"], ["0"]] }
  },
  "jobs": [
    { "command": "invariants", "args": ["S1"] },
    { "command": "refl", "args": ["kernel", "p"] }
  ]
}"#;
    let ws = parse_workspace(text).unwrap();
    assert_eq!(ws.modules["P1"].module.dims(), &[1, 1]);
    assert_eq!(ws.modules["R"].module.dim(), 2);
    assert_eq!(ws.maps["p"].rank(), 1);
    assert_eq!(ws.jobs.len(), 2);
    assert!(matches!(ws.jobs[0].command, Command::Invariants { .. }));
    let inv = reflexa_cli::run_jobs(&ws);
    assert_eq!(inv.exit_code, 0, "{}", inv.stdout);
    let r = json(&inv);
    assert_eq!(r["jobs"][0]["report"]["grade"], 1);
    assert_eq!(r["jobs"][1]["report"]["kernel"]["dims"], serde_json::json!([0, 1]));
}

#[test]
fn jobs_with_unknown_references_are_diagnosed() {
    let text = r#"{ "jobs": [{ "command": "invariants", "args": ["S9@kA2"] }, { "command": "certify", "args": ["abelian", "nowhere"] }] }"#;
    let diags = parse_workspace(text).unwrap_err();
    assert_eq!(diags.len(), 2);
    assert!(diags[1].message.contains("unresolved algebra reference"));
}

#[test]
fn check_conditions_on_ka2() {
    let inv = run(&["check-conditions", "kA2", "--ln", "2,2", "--ln", "1,2"]);
    assert_eq!(inv.exit_code, 1);
    let r = json(&inv);
    let ln = r["ln"].as_array().unwrap();
    assert_eq!(ln.len(), 4);
    for e in ln {
        let expected = if e["l"] == 2 { "holds" } else { "fails" };
        assert_eq!(e["verdict"], expected);
    }
    assert_eq!(r["dominant_dimension"]["left"], 1);
    assert_eq!(r["cap"], 5);
}

#[test]
fn certify_ka2_is_consistent() {
    let inv = run(&["certify", "quasi-abelian", "kA2", "--dim-budget", "4"]);
    assert_eq!(inv.exit_code, 0);
    let r = json(&inv);
    assert_eq!(r["verdict"], "consistent");
    assert_eq!(r["options"]["dim_budget"], 4);
}

#[test]
fn invariants_of_s1() {
    let inv = run(&["invariants", "S1@kA2"]);
    assert_eq!(inv.exit_code, 0);
    let r = json(&inv);
    assert_eq!(r["grade"], 1);
    assert_eq!(r["sgrade"], 1);
    assert_eq!(r["torsion"], true);
    assert_eq!(r["reflexive"], false);
    assert_eq!(r["ab_sequence"]["exact"], true);
}

#[test]
fn resolutions() {
    let r = json(&run(&["resolve", "S1@kA2", "--degree", "3"]));
    assert_eq!(r["terms"], serde_json::json!([[1], [2]]));
    assert_eq!(r["dimension"], 1);
    let r = json(&run(&["resolve", "S2@kA2", "--degree", "3", "--injective"]));
    assert_eq!(r["terms"], serde_json::json!([[2], [1]]));
    let r = json(&run(&["resolve", "S1@k[x]/(x^2)", "--degree", "2"]));
    assert_eq!(r["dimension"], serde_json::json!({ "at_least": 3 }));
}

#[test]
fn serre_and_morita_commands() {
    let inv = run(&["serre", "kA2", "--simples", "1"]);
    assert_eq!(inv.exit_code, 3);
    assert!(inv.stderr.contains("strong grade"), "{}", inv.stderr);
    let inv = run(&["serre", "auslander(k[x]/(x^2))", "--simples", "2"]);
    assert_eq!(inv.exit_code, 0, "{}", inv.stderr);
    assert_eq!(json(&inv)["regenerated"], serde_json::json!([2]));
    let r = json(&run(&["morita", "end", "R@k[x]/(x^2)", "S1@k[x]/(x^2)"]));
    assert_eq!(r["end_dim"], 5);
    assert_eq!(r["block_dims"], serde_json::json!([[2, 1], [1, 1]]));
    let inv = run(&["morita", "verify", "P1@kA2", "P2@kA2", "--mode", "refl"]);
    assert_eq!(inv.exit_code, 0, "{}{}", inv.stdout, inv.stderr);
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(run(&["invariants", "S7@kA2"]).exit_code, 3);
    assert_eq!(run(&["certify", "abelian", "nope"]).exit_code, 3);
    assert_eq!(run(&["bogus"]).exit_code, 3);
    assert_eq!(run(&["run", "/nonexistent/workspace.json"]).exit_code, 3);
}

#[test]
fn reports_are_reproducible() {
    let a = run(&["check-conditions", "auslander(k[x]/(x^3))", "--ln", "2,2"]);
    let b = run(&["check-conditions", "auslander(k[x]/(x^3))", "--ln", "2,2"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn budget_from_environment() {
    let bin = env!("CARGO_BIN_EXE_reflexa");
    let out = std::process::Command::new(bin).args(["invariants", "S1@kA2"]).env("REFLEXA_BUDGET", "12345").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["search_budget"], 12345);
    let out = std::process::Command::new(bin).args(["invariants", "S1@kA2"]).env("REFLEXA_BUDGET", "lots").output().unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn workspace_file_runs_end_to_end() {
    let dir = std::env::temp_dir().join(format!("reflexa-ws-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ws.json");
    std::fs::write(&path, r#"{ "jobs": [ { "command": "check-conditions", "args": ["kA2", "--ln", "2,2"] } ] }"#).unwrap();
    let inv = run(&["run", path.to_str().unwrap()]);
    // dominant dimension 1 makes the report carry a fails verdict
    assert_eq!(inv.exit_code, 1);
    assert_eq!(json(&inv)["jobs"][0]["exit"], 1);
    std::fs::write(&path, "{ \"modules\": { \"M\": { \"algebra\": \"B\", \"total\": 1 } } }").unwrap();
    let inv = run(&["run", path.to_str().unwrap()]);
    assert_eq!(inv.exit_code, 3);
    assert!(inv.stderr.contains(":1:34: unresolved algebra reference"), "{}", inv.stderr);
    std::fs::remove_dir_all(&dir).ok();
}
