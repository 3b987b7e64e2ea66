use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn hmcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmcoh")).args(args).output().expect("binary runs")
}

fn f(name: &str) -> String {
    fixture(name).display().to_string()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn shipped_fixtures_validate_except_the_broken_one() {
    for entry in fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        let out = hmcoh(&["validate", &path.display().to_string()]);
        let r = report(&out);
        if name == "broken_a2.cat" {
            assert_eq!(out.status.code(), Some(2));
            assert_eq!(r["valid"], false);
            assert_eq!(r["violations"][0]["kind"], "left_identity");
            assert_eq!(r["violations"][0]["f"], "1->2:a");
        } else {
            assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
            assert_eq!(r["valid"], true, "{name}");
        }
    }
}

#[test]
fn kronecker_hochschild_cohomology() {
    let out = hmcoh(&["hh", &f("kr.cat"), "--max-degree", "3"]);
    assert!(out.status.success());
    let r = report(&out);
    assert_eq!(r["schema"], "hmcoh.report/1");
    assert_eq!(r["HH"], serde_json::json!([1, 3, 0, 0]));
}

#[test]
fn happel_sequence_from_the_command_line() {
    let out = hmcoh(&["happel", &f("one.cat"), "--module", &f("k2.mod"), "--max-degree", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["sequence"]["exact"], true);
    let dims: Vec<u64> = r["dims"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(&dims[..4], &[1, 1, 3, 3]);
}

#[test]
fn extension_report_is_a_readable_category() {
    let out = hmcoh(&["extend", &f("one.cat"), "--module", &f("k2.mod")]);
    assert!(out.status.success());
    let r = report(&out);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kr_again.cat");
    fs::write(&path, serde_json::to_string_pretty(&r["extension"]).unwrap()).unwrap();
    let again = hmcoh(&["hh", &path.display().to_string(), "--max-degree", "2"]);
    assert!(again.status.success(), "{}", stderr(&again));
    assert_eq!(report(&again)["HH"], serde_json::json!([1, 3, 0]));
}

#[test]
fn module_file_resolves_its_category_relative_to_itself() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(fixture("a2.cat"), dir.path().join("a2.cat")).unwrap();
    fs::copy(fixture("a2_simple1.mod"), dir.path().join("s.mod")).unwrap();
    let out = hmcoh(&["validate", &dir.path().join("s.mod").display().to_string()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    fs::remove_file(dir.path().join("a2.cat")).unwrap();
    let out = hmcoh(&["validate", &dir.path().join("s.mod").display().to_string()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("a2.cat"), "{}", stderr(&out));
}

#[test]
fn budget_guard_aborts_with_the_projected_size() {
    let out = hmcoh(&["hh", &f("full2.cat"), "--max-degree", "8", "--budget", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = stderr(&out);
    assert!(err.contains("degree 6 needs 128 basis elements"), "{err}");
}

#[test]
fn dangling_reference_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cat");
    fs::write(
        &path,
        r#"{"schema": "hmcoh.category/1", "field": "Q", "objects": ["x"],
            "homs": {"x->x": ["id"]}, "identities": {"x": "id"},
            "compose": [{"g": "x->x:id", "f": "x->x:nope", "result": {}}]}"#,
    )
    .unwrap();
    let out = hmcoh(&["validate", &path.display().to_string()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("compose[0].f") && err.contains("x->x:nope"), "{err}");
}

#[test]
fn syntax_errors_carry_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cat");
    fs::write(&path, "{\n  \"schema\": \"hmcoh.category/1\",\n  \"field\" \"Q\"\n}\n").unwrap();
    let out = hmcoh(&["validate", &path.display().to_string()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.cat:3:"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_reported_once() {
    let out = hmcoh(&["hh", "/nonexistent/x.cat"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert_eq!(err.matches("os error").count(), 1, "{err}");
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let args = ["ext", &f("a2_simple1.mod"), &f("a2_simple2.mod"), "--max-degree", "3"];
    let direct = hmcoh(&args);
    let mut with_out = args.to_vec();
    let shown = path.display().to_string();
    with_out.extend(["--out", &shown]);
    let written = hmcoh(&with_out);
    assert!(written.status.success());
    assert!(written.stdout.is_empty());
    assert_eq!(fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn tsv_output_flattens_paths() {
    let out = hmcoh(&["hh", &f("a2.cat"), "--max-degree", "2", "--format", "tsv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "schema\thmcoh.report/1");
    assert!(lines.contains(&"HH.0\t1"));
    assert!(lines.contains(&"HH.2\t0"));
    assert!(lines.iter().all(|l| l.split('\t').count() == 2));
}

#[test]
fn ext_between_simples_of_a2() {
    // For right modules the arrow acts M₂ → M₁, so S₁ = P₁ is projective and
    // 0 → S₁ → P₂ → S₂ → 0 gives Ext¹(S₂, S₁) = k.
    let ext = |a: &str, b: &str| {
        let out = hmcoh(&["ext", &f(a), &f(b), "--max-degree", "2"]);
        assert!(out.status.success());
        report(&out)["Ext"].clone()
    };
    assert_eq!(ext("a2_simple2.mod", "a2_simple1.mod"), serde_json::json!([0, 1, 0]));
    assert_eq!(ext("a2_simple1.mod", "a2_simple2.mod"), serde_json::json!([0, 0, 0]));
}

#[test]
fn prime_field_override() {
    let out = hmcoh(&["hh", &f("kr.cat"), "--max-degree", "2", "--field", "GF(2)"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(report(&out)["HH"], serde_json::json!([1, 3, 0]));
    let bad = hmcoh(&["hh", &f("kr.cat"), "--field", "GF(4)"]);
    assert_ne!(bad.status.code(), Some(0));
}

#[test]
fn contraction_and_morita_check() {
    let out = hmcoh(&["contract", &f("a3.cat"), "--partition", "e=1,2;f=3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let out = hmcoh(&["morita-check", &f("kr.cat"), "--partition", "e=1,2", "--max-degree", "2"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = report(&out);
    assert_eq!(r["hh"]["equal"], true);
    let bad = hmcoh(&["contract", &f("a3.cat"), "--partition", "e=1,2"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("not covered"));
}

#[test]
fn module_over_the_wrong_category_is_rejected() {
    let out = hmcoh(&["happel", &f("a2.cat"), "--module", &f("k.mod")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}
