mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::data_path;

fn occsv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_occsv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sample_tables_exit_with_warnings() {
    let meta = data_path("table1_meta.csv");
    let cits = data_path("table2_cits.csv");
    let o = occsv(&["validate", "--meta", path(&meta), "--cits", path(&cits)]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6, "{text}");
    assert!(text.lines().all(|l| l.starts_with("WARNING NONPADDED_DATE META:")));
    assert!(text.contains("META:7:pub_date"));
    assert!(text.contains("(suggestion: 2017-05)"));
}

#[test]
fn croci_json_output() {
    let cits = data_path("table2_cits.csv");
    let o = occsv(&["validate", "--cits", path(&cits), "--profile", "croci", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let (summary, findings) = lines.split_last().unwrap();
    assert_eq!(findings.len(), 5);
    for (f, row) in findings.iter().zip(6..) {
        assert_eq!(f["code"], "NON_DOI_CITATION");
        assert_eq!(f["severity"], "ERROR");
        assert_eq!(f["file"], "CITS");
        assert_eq!(f["row"], row);
    }
    assert_eq!(summary["error_count"], 5);
    assert_eq!(summary["warning_count"], 0);
}

#[test]
fn header_only_file_is_clean() {
    let dir = tempfile::tempdir().unwrap();
    let meta = dir.path().join("meta.csv");
    std::fs::write(&meta, "id,title,author,pub_date,venue,volume,issue,page,type,publisher,editor\n").unwrap();
    let o = occsv(&["validate", "--meta", path(&meta)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_and_io_failures() {
    assert_eq!(occsv(&["validate"]).status.code(), Some(3));
    assert_eq!(occsv(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(occsv(&["validate", "--meta", "/nonexistent/meta.csv"]).status.code(), Some(3));
    let meta = data_path("table1_meta.csv");
    assert_eq!(occsv(&["validate", "--meta", path(&meta), "--profile", "croci"]).status.code(), Some(3));
    assert_eq!(occsv(&["normalize", "--meta", path(&meta)]).status.code(), Some(3));
    assert_eq!(occsv(&["--help"]).status.code(), Some(0));
}

#[test]
fn normalize_writes_canonical_files() {
    let meta = data_path("table1_meta.csv");
    let cits = data_path("table2_cits.csv");
    let first = tempfile::tempdir().unwrap();
    let o = occsv(&["normalize", "--meta", path(&meta), "--cits", path(&cits), "--out", path(first.path())]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));

    let meta_out = std::fs::read_to_string(first.path().join("meta.csv")).unwrap();
    assert!(meta_out.starts_with("id,title,author,pub_date,venue,volume,issue,page,type,publisher,editor\n"));
    assert!(meta_out.contains(",2017-05,"));
    let cits_out = std::fs::read_to_string(first.path().join("cits.csv")).unwrap();
    assert_eq!(cits_out.lines().count(), 11);

    let second = tempfile::tempdir().unwrap();
    let o = occsv(&[
        "normalize",
        "--meta",
        path(&first.path().join("meta.csv")),
        "--cits",
        path(&first.path().join("cits.csv")),
        "--out",
        path(second.path()),
    ]);
    assert_eq!(o.status.code(), Some(0));
    for name in ["meta.csv", "cits.csv"] {
        assert_eq!(
            std::fs::read(first.path().join(name)).unwrap(),
            std::fs::read(second.path().join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn normalize_refuses_on_errors() {
    let cits = data_path("table2_cits.csv");
    let out = tempfile::tempdir().unwrap();
    let o = occsv(&["normalize", "--cits", path(&cits), "--profile", "croci", "--out", path(out.path())]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("REFUSE_ON_ERRORS"));
    assert!(!out.path().join("cits.csv").exists());
}

#[test]
fn strict_mode_turns_slips_into_errors() {
    let meta = data_path("table1_meta.csv");
    let o = occsv(&["validate", "--meta", path(&meta), "--strict"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).lines().all(|l| l.starts_with("ERROR NONPADDED_DATE")));
}
