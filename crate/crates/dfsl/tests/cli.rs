//! Black-box tests of the `dfsl` binary: flags, exit codes, output files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn samples_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../samples")
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn dfsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfsl"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn help_lists_flags_and_succeeds() {
    let out = dfsl(&["run", "--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    for flag in [
        "--data",
        "--hex",
        "--xml",
        "--out",
        "--dump-ast",
        "--dump-fields",
        "--strict",
    ] {
        assert!(text.contains(flag), "help should mention {flag}");
    }
}

#[test]
fn version_prints_semver() {
    let out = dfsl(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains(env!("CARGO_PKG_VERSION")), "got: {text}");
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = dfsl(&["run", "x.dfsl", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn missing_script_is_io_error() {
    let out = dfsl(&["run", "/no/such/script.dfsl"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr_of(&out).contains("cannot read script"));
}

#[test]
fn parse_error_reports_location_and_exits_1() {
    let fixture = fixtures_dir().join("unterminated.dfsl");
    let out = dfsl(&["run", fixture.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr_of(&out);
    assert!(err.starts_with("error:"), "got: {err}");
    assert!(err.contains("line"), "diagnostic should cite a line: {err}");
}

#[test]
fn semantic_error_exits_2() {
    let fixture = fixtures_dir().join("undefined_domain.dfsl");
    let out = dfsl(&["run", fixture.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("error:"));
}

#[test]
fn runtime_error_exits_3() {
    let icmp = samples_dir().join("icmp.dfsl");
    let truncated = fixtures_dir().join("truncated.dat");
    let out = dfsl(&[
        "run",
        icmp.to_str().unwrap(),
        "--data",
        truncated.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("error:"));
}

#[test]
fn success_writes_out_and_xml_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("pmd.txt");
    let xml_path = dir.path().join("pmd.xml");
    let script = samples_dir().join("pmd.dfsl");
    let out = dfsl(&[
        "run",
        script.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
        "--xml",
        xml_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    assert!(stdout_of(&out).is_empty(), "--out should redirect all text");

    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.contains("Tx Power Cutback Value = 18"));

    let xml = std::fs::read_to_string(&xml_path).unwrap();
    dfsl::validate_xml(&xml).unwrap();
    assert!(xml.contains(r#"<field name="txpowervalue" offset="0" width="5" value="18"/>"#));
}

#[test]
fn hex_override_replaces_bound_data() {
    let script = samples_dir().join("pmd.dfsl");
    // Same bytes as the script's own binding: identical output.
    let same = dfsl(&["run", script.to_str().unwrap(), "--hex", "9351"]);
    let plain = dfsl(&["run", script.to_str().unwrap()]);
    assert_eq!(same.status.code(), Some(0));
    assert_eq!(stdout_of(&same), stdout_of(&plain));

    // Different bytes: the first field (top five bits of 0xFFFF) changes.
    let flipped = dfsl(&["run", script.to_str().unwrap(), "--hex", "FFFF"]);
    assert_eq!(flipped.status.code(), Some(0));
    assert!(stdout_of(&flipped).contains("Tx Power Cutback Value = 31"));
}

#[test]
fn malformed_hex_is_usage_error() {
    let script = samples_dir().join("pmd.dfsl");
    let out = dfsl(&["run", script.to_str().unwrap(), "--hex", "93zz"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr_of(&out).contains("error:"));
}

#[test]
fn data_and_hex_conflict() {
    let script = samples_dir().join("pmd.dfsl");
    let dat = fixtures_dir().join("truncated.dat");
    let out = dfsl(&[
        "run",
        script.to_str().unwrap(),
        "--data",
        dat.to_str().unwrap(),
        "--hex",
        "9351",
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn strict_warns_about_unread_bits() {
    let icmp = samples_dir().join("icmp.dfsl");
    let out = dfsl(&["run", icmp.to_str().unwrap(), "--strict"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "warning must not change the exit code"
    );
    let err = stderr_of(&out);
    assert!(
        err.contains("warning: 496 of 784 bits were never read"),
        "got: {err}"
    );

    // A fully consumed stream stays quiet.
    let pmd = samples_dir().join("pmd.dfsl");
    let out = dfsl(&["run", pmd.to_str().unwrap(), "--strict"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stderr_of(&out).is_empty());
}

#[test]
fn dump_fields_appends_leaf_lines() {
    let script = samples_dir().join("pmd.dfsl");
    let out = dfsl(&["run", script.to_str().unwrap(), "--dump-fields"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("txpowervalue = 18"));
    assert!(text.contains("hybridselect = 1"));
}

#[test]
fn dump_ast_shows_size_annotations() {
    let script = samples_dir().join("icmp.dfsl");
    let out = dfsl(&["run", script.to_str().unwrap(), "--dump-ast"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(
        text.contains("$icmp_response [fixed, 288 bits]"),
        "got: {text}"
    );
    assert!(
        text.contains("fixed, 48 bits"),
        "nested sizes should appear: {text}"
    );
}
