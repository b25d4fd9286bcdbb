use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tvforge"));
    cmd.current_dir(fixtures()).args(args).env_remove("TVFORGE_CACHE");
    if let Some(c) = cache {
        cmd.env("TVFORGE_CACHE", c);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn validate_reports_counts() {
    let o = run(&["validate", "spines/lens.txt"], None);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 4);
    assert!(out.contains("L(7,2) V=2 E=4 F=3"));
    assert!(out.contains("L(8,3)#L(8,3) V=9 E=18 F=10"));
}

#[test]
fn config_is_required() {
    let o = run(&["invariant", "spines/lens.txt"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--config"));
}

#[test]
fn invariant_table_and_epsilon() {
    let o = run(
        &["--config", "systems/tv21s.cfg", "invariant", "spines/lens.txt", "--point", "points/epsilon_21.txt"],
        None,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("L(7,2)"));
    assert!(rows[0].contains("t^2 + 1"));
    assert!(rows[1].contains("t^2 + 1"));
    assert!(rows[1].contains("w2^3*j222222^2 + j212212^2 + j212222^2 - j222222*j212222 + 1"));
    // four distinct normal forms, four classes
    let classes: Vec<&str> = rows.iter().map(|r| r.split_whitespace().nth(7).unwrap()).collect();
    assert_eq!(classes, ["0", "1", "2", "3"]);
}

#[test]
fn jsonl_records_parse() {
    let o = run(&["--config", "systems/tv21s.cfg", "--format", "jsonl", "invariant", "spines/lens.txt"], None);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    for line in out.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["normal_form"].is_string());
        assert!(v["class"].is_u64());
    }
    assert_eq!(out.lines().count(), 4);
}

#[test]
fn radical_suite_passes() {
    let o = run(
        &[
            "--config",
            "systems/tv21s.cfg",
            "radical",
            "golden/radical_21.txt",
            "--expected",
            "golden/radical_nf_21.txt",
        ],
        None,
    );
    assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).contains("candidates in radical: 14/14"));
}

#[test]
fn cache_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--config", "systems/tv21s.cfg", "invariant", "spines/lens.txt"];
    let first = run(&args, Some(dir.path()));
    assert!(first.status.success(), "{}", stderr(&first));
    let bases: Vec<_> = std::fs::read_dir(dir.path().join("basis")).unwrap().collect();
    assert_eq!(bases.len(), 1);
    let second = run(&args, Some(dir.path()));
    assert!(second.status.success());
    assert_eq!(first.stdout, second.stdout);

    let g = run(&["--config", "systems/tv21s.cfg", "groebner"], Some(dir.path()));
    assert!(stderr(&g).contains("cache hit"), "{}", stderr(&g));
    assert_eq!(stdout(&g).lines().filter(|l| !l.starts_with('#')).count(), 22);
}

#[test]
fn corrupt_basis_is_diagnosed() {
    let dir = tempfile::tempdir().unwrap();
    let g = run(&["--config", "systems/tv21s.cfg", "groebner"], Some(dir.path()));
    assert!(g.status.success());
    let entry = std::fs::read_dir(dir.path().join("basis")).unwrap().next().unwrap().unwrap().path();
    let text = std::fs::read_to_string(&entry).unwrap();
    let body_line = text.lines().position(|l| !l.starts_with('#')).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    lines[body_line].push_str(" + 1");
    std::fs::write(&entry, lines.join("\n") + "\n").unwrap();
    let o = run(&["--config", "systems/tv21s.cfg", "invariant", "spines/lens.txt"], Some(dir.path()));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("corrupt cache entry"), "{}", stderr(&o));
}

#[test]
fn large_ideal_needs_stretch() {
    let o = run(&["--config", "systems/tv31plus.cfg", "groebner"], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--stretch"));
}
