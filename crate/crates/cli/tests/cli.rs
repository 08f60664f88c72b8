//! End-to-end runs of the `powercrit` binary.

use std::path::Path;
use std::process::{Command, Output};

use powercrit_core::Group;
use serde_json::Value;

fn powercrit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powercrit"))
        .args(args)
        .env_remove("POWERCRIT_MAX_MATERIALIZE")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let text = std::fs::read_to_string(&path).expect("schema file");
    let value: Value = serde_json::from_str(&text).expect("schema is JSON");
    jsonschema::validator_for(&value).expect("schema compiles")
}

fn assert_valid(validator: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "schema violations: {errors:?}");
}

fn json(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(out)).expect("valid JSON")
}

// Keys of every object appear in sorted order in the raw text.
fn assert_keys_sorted(text: &str) {
    let value: Value = serde_json::from_str(text).unwrap();
    let reserialized = serde_json::to_string_pretty(&value).unwrap();
    assert_eq!(text.trim_end(), reserialized.trim_end());
}

#[test]
fn analyze_d15_has_one_plain_critical_class() {
    let out = powercrit(&["analyze", "D:15", "--json", "--stable"]);
    let doc = json(&out);
    assert_valid(&schema("analysis_report.schema.json"), &doc);
    assert_keys_sorted(&stdout(&out));
    let critical: Vec<&Value> = doc["classes"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["critical"] == true)
        .collect();
    assert_eq!(critical.len(), 1);
    assert_eq!(critical[0]["kind"], "plain");
    assert_eq!(critical[0]["size"], 8);
    assert_eq!(critical[0]["closure_size"], 9);
    assert_eq!(critical[0]["element_order"], 15);
    let total: u64 = doc["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).sum();
    assert_eq!(total, 30);
}

#[test]
fn analyze_smallest_critical_group() {
    let doc = json(&powercrit(&["analyze", "M:5,2,2,2,7", "--json", "--stable"]));
    assert_valid(&schema("analysis_report.schema.json"), &doc);
    assert_eq!(doc["order"], 100);
    assert_eq!(doc["flags"]["is_critical_group"], true);
    assert_eq!(doc["flags"]["is_compound_group"], true);
    let classes = doc["classes"].as_array().unwrap();
    let nontrivial: Vec<&Value> = classes.iter().filter(|c| c["element_order"] != 1).collect();
    assert_eq!(nontrivial.len(), 26);
    assert!(nontrivial.iter().all(|c| c["critical"] == true && c["kind"] == "compound"));
    assert_eq!(doc["frobenius"]["p"], 5);
    assert_eq!(doc["frobenius"]["q"], 2);
}

#[test]
fn census_minimum_and_verification() {
    let out = powercrit(&["census", "--max-order", "99", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let validator = schema("census_row.schema.json");
    let rows: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!rows.is_empty());
    for row in &rows {
        assert_valid(&validator, row);
        assert_eq!(row["critical"], false);
    }

    let out = powercrit(&["census", "--max-order", "100", "--verify-up-to", "100", "--json"]);
    let rows: Vec<Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let critical: Vec<&Value> = rows.iter().filter(|r| r["critical"] == true).collect();
    assert_eq!(critical.len(), 1);
    assert_eq!(critical[0]["order"], 100);
    assert_eq!(critical[0]["graph_critical"], true);
    assert!(rows.iter().all(|r| r["agrees"] == true));
}

#[test]
fn census_rejects_verify_bound_above_max() {
    let out = powercrit(&["census", "--max-order", "50", "--verify-up-to", "60"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--verify-up-to"));
}

#[test]
fn export_cyclic_is_complete() {
    let out = powercrit(&["export", "C:8", "--format", "dot", "--graph", "power"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("graph "));
    let edges = text.lines().filter(|l| l.contains(" -- ")).count();
    assert_eq!(edges, 8 * 7 / 2);
    assert!(!text.contains('\r'));
}

#[test]
fn export_s4_matches_brute_force_edge_count() {
    let doc = json(&powercrit(&["export", "S:4", "--format", "json", "--graph", "power"]));
    assert_valid(&schema("edge_list.schema.json"), &doc);
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 24);
    // x ~ y iff one is a power of the other
    let g = Group::symmetric(4).unwrap();
    let powers = |x: usize| -> Vec<usize> { (0..g.element_order(x)).map(|k| g.pow(x, k)).collect() };
    let mut brute = 0;
    for x in 0..24 {
        for y in x + 1..24 {
            if powers(x).contains(&y) || powers(y).contains(&x) {
                brute += 1;
            }
        }
    }
    assert_eq!(doc["edges"].as_array().unwrap().len(), brute);
}

#[test]
fn export_enhanced_graph_of_s3() {
    let doc = json(&powercrit(&["export", "D:3", "--format", "json", "--graph", "enhanced"]));
    assert_valid(&schema("edge_list.schema.json"), &doc);
    assert_eq!(doc["graph"], "enhanced");
    // x ~ y iff <x, y> is cyclic
    let g = Group::dihedral(3).unwrap();
    let mut brute = 0;
    for x in 0..6 {
        for y in x + 1..6 {
            let sub = g.generated_subgroup(&[x, y], 6).unwrap();
            if sub.iter().any(|z| g.element_order(z) as usize == sub.len()) {
                brute += 1;
            }
        }
    }
    assert_eq!(doc["edges"].as_array().unwrap().len(), brute);
    let dot = powercrit(&["export", "D:3", "--format", "dot", "--graph", "enhanced"]);
    assert_eq!(stdout(&dot).lines().filter(|l| l.contains(" -- ")).count(), brute);
}

#[test]
fn export_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.dot");
    let out = powercrit(&["export", "Q:3", "--format", "dot", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let piped = powercrit(&["export", "Q:3", "--format", "dot"]);
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
}

#[test]
fn analyze_writes_dot_alongside_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c6.dot");
    let out = powercrit(&["analyze", "C:6", "--dot", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.contains("0 -- 1;"));
}

#[test]
fn element_report_is_schema_valid() {
    let validator = schema("element_report.schema.json");
    let doc = json(&powercrit(&["analyze", "S:4", "--element", "(1 2 3 4)", "--json", "--stable"]));
    assert_valid(&validator, &doc);
    assert_eq!(doc["class"]["kind"], "compound");
    assert_eq!(doc["class"]["params"]["p"], 2);
    assert_eq!(doc["class"]["params"]["r"], 2);
    assert_eq!(doc["class"]["params"]["s"], 0);
    let doc = json(&powercrit(&["analyze", "S:8", "--element", "(1 2 3)(4 5 6 7 8)", "--json", "--stable"]));
    assert_valid(&validator, &doc);
    assert_eq!(doc["mode"], "lazy");
    assert_eq!(doc["maximal"], true);
    assert_eq!(doc["class"]["critical"], true);
    assert_eq!(doc["class"]["kind"], "plain");
}

#[test]
fn verify_json_is_schema_valid() {
    let doc = json(&powercrit(&["verify", "--suite", "closure", "--max-order", "60", "--json"]));
    assert_valid(&schema("verify_report.schema.json"), &doc);
    assert!(doc.as_array().unwrap().iter().all(|c| c["violation_count"] == 0));
}

#[test]
fn verify_suites_pass_at_small_scale() {
    for (suite, max) in [("closure", "60"), ("partitions", "120"), ("criticality", "120")] {
        let out = powercrit(&["verify", "--suite", suite, "--max-order", max]);
        assert_eq!(out.status.code(), Some(0), "{suite}: {}", stdout(&out));
        assert!(stdout(&out).lines().all(|l| !l.starts_with("FAIL")));
    }
}

#[test]
fn stable_output_is_byte_identical() {
    for args in [
        &["analyze", "S:4", "--json", "--stable"][..],
        &["analyze", "M:5,2,2,2,7", "--stable"][..],
        &["census", "--max-order", "200", "--verify-up-to", "120", "--json"][..],
        &["export", "D:6", "--format", "dot"][..],
        &["export", "S:4", "--format", "json", "--graph", "enhanced"][..],
    ] {
        let a = powercrit(args);
        let b = powercrit(args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let doc = json(&powercrit(&["analyze", "S:4", "--json", "--stable"]));
    assert!(doc.get("timing_ms").is_none());
    let doc = json(&powercrit(&["analyze", "S:4", "--json"]));
    assert!(doc.get("timing_ms").is_some());
}

#[test]
fn parse_errors_exit_2_with_position() {
    let out = powercrit(&["analyze", "D:x"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("position"), "{err}");

    let out = powercrit(&["analyze", "S:4", "--element", "(1 2)(3 x)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("8"));

    assert_eq!(powercrit(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(powercrit(&["census"]).status.code(), Some(2));
    assert_eq!(powercrit(&["--version"]).status.code(), Some(0));
}

#[test]
fn oversized_groups_exit_3() {
    let out = powercrit(&["analyze", "S:8"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("4096"), "{err}");
    assert_eq!(powercrit(&["export", "S:7", "--format", "dot"]).status.code(), Some(3));
}

#[test]
fn materialization_limit_comes_from_environment() {
    let run = |limit: &str| {
        Command::new(env!("CARGO_BIN_EXE_powercrit"))
            .args(["analyze", "S:4"])
            .env("POWERCRIT_MAX_MATERIALIZE", limit)
            .output()
            .unwrap()
    };
    assert_eq!(run("10").status.code(), Some(3));
    assert_eq!(run("24").status.code(), Some(0));
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn run_can_be_driven_in_process() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = powercrit_cli::run(["powercrit", "analyze", "Q:3"], &mut out, &mut err);
    assert_eq!(code, 0);
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("group Q:3 of order 8"), "{text}");
}

#[test]
fn schemas_reject_malformed_documents() {
    let mut doc = json(&powercrit(&["analyze", "D:4", "--json", "--stable"]));
    let validator = schema("analysis_report.schema.json");
    assert!(validator.is_valid(&doc));
    doc["classes"][0]["kind"] = "mixed".into();
    assert!(!validator.is_valid(&doc));
    doc["classes"][0]["kind"] = "plain".into();
    doc["unexpected"] = 1.into();
    assert!(!validator.is_valid(&doc));

    let mut edges = json(&powercrit(&["export", "C:3", "--format", "json"]));
    let validator = schema("edge_list.schema.json");
    edges["edges"][0] = serde_json::json!([0, 1, 2]);
    assert!(!validator.is_valid(&edges));
}
