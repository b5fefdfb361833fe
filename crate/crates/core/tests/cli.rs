use std::path::PathBuf;
use std::process::{Command, Output};

use evenodd_gg::cli::{
    parse_identity_csv, write_identity_csv, BijectionReport, CountReport, IdentityReport,
    ListReport, RecurrenceReport, SeriesReport,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evenodd-gg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

type RoundTrip = fn(&str);

fn assert_json_round_trip<T: Serialize + DeserializeOwned>(text: &str) {
    let parsed: T = serde_json::from_str(text).unwrap();
    let mut again = serde_json::to_string_pretty(&parsed).unwrap();
    again.push('\n');
    assert_eq!(again, text);
}

#[test]
fn worked_example_lists_match_golden_files() {
    for (class, i) in [("G", 1), ("G", 2), ("Gprime", 1), ("Gprime", 2), ("H", 1), ("H", 2)] {
        let out = bin(&["list", "--class", class, "--i", &i.to_string(), "--n", "9"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(
            stdout(&out),
            golden(&format!("list_{class}_{i}_n9.txt")),
            "{class}_{i}"
        );
    }
    let out = bin(&["--format", "json", "list", "--class", "G", "--i", "1", "--n", "9"]);
    assert_eq!(stdout(&out), golden("list_G_1_n9.json"));
}

#[test]
fn identity_check_passes_and_reports_on_stderr() {
    let out = bin(&["identity-check", "--max-n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(err.contains("identity-check: 2/2 checks passed"), "{err}");
    assert!(stdout(&out).contains("ok"));
}

#[test]
fn json_dumps_round_trip() {
    let cases: [(&[&str], RoundTrip); 6] = [
        (&["count", "--class", "H", "--n", "12"], assert_json_round_trip::<CountReport>),
        (
            &["identity-check", "--max-n", "12", "--refined"],
            assert_json_round_trip::<IdentityReport>,
        ),
        (
            &["recurrence-check", "--max-r", "2", "--max-s", "2", "--max-n", "10"],
            assert_json_round_trip::<RecurrenceReport>,
        ),
        (&["bijection-check", "--max-n", "8"], assert_json_round_trip::<BijectionReport>),
        (&["series", "--i", "2", "--max-n", "30"], assert_json_round_trip::<SeriesReport>),
        (
            &["list", "--class", "H", "--i", "1", "--n", "14", "--r", "1", "--s", "2"],
            assert_json_round_trip::<ListReport>,
        ),
    ];
    for (args, check) in cases {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let out = bin(&full);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        check(&stdout(&out));
    }
}

#[test]
fn identity_csv_round_trips() {
    let out = bin(&["identity-check", "--max-n", "20", "--format", "csv"]);
    let text = stdout(&out);
    let rows = parse_identity_csv(&text).unwrap();
    assert_eq!(rows.len(), 42);
    assert_eq!(write_identity_csv(&rows), text);
    assert!(rows.iter().all(|r| r.h == r.g && r.g == r.gprime));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "bijection-check", "--max-n", "10"];
    assert_eq!(stdout(&bin(&args)), stdout(&bin(&args)));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("evenodd-gg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("series.csv");
    let out = bin(&[
        "series", "--i", "1", "--order", "10", "--format", "csv", "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,coefficient\n0,1\n"));
    assert!(text.ends_with("9,5\n"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn usage_errors_have_their_own_exit_code() {
    assert_eq!(bin(&["list", "--class", "K", "--i", "1", "--n", "9"]).status.code(), Some(2));
    assert_eq!(bin(&["count", "--class", "H", "--i", "0", "--n", "9"]).status.code(), Some(2));
    assert_eq!(
        bin(&["count", "--class", "Gprime", "--n", "9", "--r", "0", "--s", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(bin(&["bijection-check"]).status.code(), Some(2));
    assert_eq!(bin(&[]).status.code(), Some(2));
}

#[test]
fn single_key_audit_dump() {
    let out = bin(&["bijection-check", "--n", "9", "--r", "1", "--s", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("G/even-min"));
    assert!(text.contains("7+2 -> 3"));
    assert!(text.contains("5+4 -> 3"));
}
