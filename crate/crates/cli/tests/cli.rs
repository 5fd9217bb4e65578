use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use algord::RunReport;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn algord(args: &[&str]) -> Output {
    algord_stdin(args, "")
}

fn algord_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_algord"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, RunReport, String) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = algord(&all);
    let text = stdout(&o);
    let report = RunReport::from_json(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (o.status.code().unwrap(), report, text)
}

#[test]
fn analyze_statuses() {
    let (code, r, _) = json(&["analyze", &data("omega.g")]);
    assert_eq!(code, 0);
    let a = r.analysis.unwrap();
    assert_eq!(a.overall_rank_bound, "2");
    assert_eq!(a.nonterminals[0].height, 0);
    assert_eq!(a.scattered_verdict.kind, "NoWitnessWithinBound");

    let (code, r, _) = json(&["analyze", &data("rationals.g")]);
    assert_eq!(code, 1);
    assert_eq!(r.status, 1);
    assert_eq!(r.analysis.unwrap().scattered_verdict.kind, "RefutedDenseTriple");

    let (code, r, _) = json(&["analyze", "--depth", "3", &data("rationals_frontier.g")]);
    assert_eq!(code, 1);
    let v = r.analysis.unwrap().scattered_verdict;
    assert_eq!(v.words, ["00", "011", "110"]);

    let (code, r, _) = json(&["analyze", &data("no_such_file.g")]);
    assert_eq!(code, 2);
    assert_eq!(r.errors.len(), 1);
}

#[test]
fn pipeline_statuses() {
    let (code, r, _) = json(&["pipeline", "w"]);
    assert_eq!(code, 0);
    assert_eq!(r.scheme.as_deref(), Some("X = +(1, X)\n"));
    let a = r.analysis.unwrap();
    assert_eq!(a.overall_rank_bound, "2");
    assert_eq!(a.nonterminals.iter().map(|n| n.height).collect::<Vec<_>>(), [0]);

    let (code, r, _) = json(&["pipeline", "w^w"]);
    assert_eq!(code, 0);
    assert_eq!(r.analysis.unwrap().overall_rank_bound, "w^2+1");
    assert!(r.claim.unwrap().holds);
    assert!(r.assertions.iter().all(|a| a.ok));

    assert_eq!(algord(&["pipeline", "w^(w^w)"]).status.code(), Some(2));
    assert_eq!(algord(&["pipeline", "w^"]).status.code(), Some(2));
}

#[test]
fn pipeline_small_ordinals() {
    for lit in ["0", "1", "2", "5", "w+1", "w*2", "w^2*3+w*2+5"] {
        let o = algord(&["pipeline", lit, "--maxlen", "8"]);
        assert_eq!(o.status.code(), Some(0), "{lit}: {}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn misc_examples() {
    let o = algord(&["ordinal", "add", "w", "1"]);
    assert_eq!(stdout(&o), "w+1\n");
    let o = algord(&["enum", &data("omega.g"), "--maxlen", "4"]);
    assert_eq!(stdout(&o), "0\n10\n110\n1110\n");
    let o = algord_stdin(&["embed"], "b < a\n");
    assert_eq!(stdout(&o), "b:001\na:01\n");
    assert_eq!(o.status.code(), Some(0));
    let o = algord(&["translate", &data("omega.scheme")]);
    assert!(stdout(&o).ends_with("X -> 0 𝟏 | 1 X\n"), "{}", stdout(&o));
    let o = algord(&["translate", "--frontier", &data("rationals.scheme")]);
    assert!(stdout(&o).ends_with("X -> 0 X | 1 0 | 1 1 X\n"));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(algord_stdin(&["embed"], "a < b\nb < a\n").status.code(), Some(2));
    assert_eq!(algord(&["ordinal", "mul", "w", "(w"]).status.code(), Some(2));
    assert_eq!(algord(&["frobnicate"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.scheme");
    std::fs::write(&bad, "F1 = G(1, 2)\nG(x) = x\n").unwrap();
    let o = algord(&["translate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("G"));
    let bad = dir.path().join("bad.g");
    std::fs::write(&bad, "terminals: 0 < 1\nX -> 0 | 1 Z\n").unwrap();
    assert_eq!(algord(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    let eps = dir.path().join("eps.g");
    std::fs::write(&eps, "terminals: 0 < 1\nX -> ε | 1 X\n").unwrap();
    assert_eq!(algord(&["analyze", eps.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(stdout(&algord(&["enum", eps.to_str().unwrap(), "--maxlen", "2"])), "ε\n1\n11\n");
}

#[test]
fn translated_grammar_file_reloads() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ww.g");
    let o = algord(&["translate", "--frontier", &data("omega_omega.scheme"), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let (code, r, _) = json(&["analyze", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let a = r.analysis.unwrap();
    assert_eq!(a.overall_rank_bound, "w^2+1");
    let mut heights: Vec<usize> = a.nonterminals.iter().map(|n| n.height).collect();
    heights.sort();
    assert_eq!(heights, [0, 1, 2]);
}

#[test]
fn json_round_trip_is_byte_identical() {
    let runs: Vec<Vec<String>> = vec![
        vec!["analyze".into(), data("omega.g")],
        vec!["analyze".into(), data("rationals.g")],
        vec!["analyze".into(), data("missing.g")],
        vec!["pipeline".into(), "w^w".into()],
        vec!["pipeline".into(), "w^2*3+w*2+5".into(), "--maxlen".into(), "8".into()],
        vec!["scheme".into(), data("sigma.scheme")],
        vec!["translate".into(), "--frontier".into(), data("omega_omega.scheme")],
        vec!["enum".into(), data("rationals.g")],
        vec!["ordinal".into(), "pow".into(), "w+1".into(), "w".into()],
        vec!["reverse".into(), data("omega.g")],
        vec!["interval".into(), data("rationals.g"), "--lower".into(), "01".into(), "--upper-strict".into(), "--upper".into(), "1101".into()],
    ];
    for args in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (_, report, text) = json(&args);
        assert_eq!(report.to_json(), text, "{args:?}");
        let again = RunReport::from_json(&report.to_json()).unwrap();
        assert_eq!(again, report);
    }
}
