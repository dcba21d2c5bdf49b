use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn polyatlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyatlas")).args(args).output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("polyatlas-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn empty_group_file_is_rejected() {
    let path = scratch("empty.txt");
    std::fs::write(&path, "# nothing but a degree\ndegree 5\n").unwrap();
    let out = polyatlas(&["--group", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no generators"));
}

#[test]
fn malformed_permutation_exit_code() {
    let path = scratch("bad.txt");
    std::fs::write(&path, "degree 3\n(0 7)\n").unwrap();
    assert_eq!(polyatlas(&["--group", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn missing_file_exit_code() {
    assert_eq!(polyatlas(&["--group", "/nonexistent/group.txt"]).status.code(), Some(4));
}

#[test]
fn oracle_refuses_large_groups() {
    let out = polyatlas(&["--group", fixture("m11.txt").to_str().unwrap(), "--oracle"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn m12_summary_and_catalog() {
    let out_path = scratch("m12.jsonl");
    let out = polyatlas(&[
        "--group",
        fixture("m12.txt").to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = String::from_utf8(out.stdout).unwrap();
    assert!(summary.contains("rank>3: 14, rank3: 23"), "{summary}");
    let catalog = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(catalog.lines().count(), 37);
    assert!(catalog.lines().all(|l| l.starts_with("{\"generators\":") && l.contains("\"group_name\":\"m12\"")));
}

#[test]
fn catalog_on_stdout_summary_on_stderr() {
    let out = polyatlas(&["--group", fixture("s4.txt").to_str().unwrap(), "--name", "S4", "--ranks", "3"]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 2);
    assert!(stdout.contains("\"group_name\":\"S4\""));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank>3: 0, rank3: 2"));
}

#[test]
fn oracle_and_classifier_agree_through_the_cli() {
    let args = |oracle: bool| {
        let mut a = vec!["--group".to_string(), fixture("s5.txt").to_str().unwrap().to_string()];
        if oracle {
            a.push("--oracle".into());
        }
        a
    };
    let run = |oracle: bool| {
        let a = args(oracle);
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        let out = polyatlas(&refs);
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run(false), run(true));
}

#[test]
fn class_table() {
    let out = polyatlas(&["--group", fixture("s4.txt").to_str().unwrap(), "--dump-classes"]);
    assert!(out.status.success());
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("involution classes: 2"), "{table}");
    assert_eq!(table.lines().filter(|l| l.trim_start().starts_with(char::is_numeric)).count(), 7);
}
