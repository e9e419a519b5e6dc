//! End-to-end tests against the built binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn nearly(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nearly"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    child.wait_with_output().expect("binary exits")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("report parses as JSON")
}

fn strip_micros(value: &mut serde_json::Value) {
    match value {
        serde_json::Value::Object(map) => {
            map.remove("micros");
            for v in map.values_mut() {
                strip_micros(v);
            }
        }
        serde_json::Value::Array(items) => {
            for v in items.iter_mut() {
                strip_micros(v);
            }
        }
        _ => {}
    }
}

#[test]
fn gen_pipes_into_alpha() {
    let gen = nearly(&["gen", "path:7"], None);
    assert!(gen.status.success());
    let g6 = stdout(&gen);
    assert_eq!(g6.trim(), "FhCGG");

    let alpha = nearly(&["alpha", "--k", "1"], Some(&g6));
    assert!(alpha.status.success());
    let doc = json(&alpha);
    assert_eq!(doc["records"][0]["value"], 4);
    assert_eq!(doc["records"][0]["method"], "recursive");

    let empty = nearly(&["gen", "empty:5"], None);
    let alpha = nearly(&["alpha", "--k", "1"], Some(&stdout(&empty)));
    let doc = json(&alpha);
    assert_eq!(doc["records"][0]["value"], 0);
    assert!(doc["records"][0]["witness"].is_null());
}

#[test]
fn alpha_handles_edge_lists_and_streams() {
    let alpha = nearly(&["alpha", "--k", "0"], Some("3 2\n0 1\n1 2\n"));
    assert!(alpha.status.success());
    let doc = json(&alpha);
    assert_eq!(doc["records"][0]["value"], 2);

    // Two graph6 lines stream into two ordered records.
    let two = "A_\nBw\n";
    let doc = json(&nearly(&["alpha", "--k", "1"], Some(two)));
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0]["index"], 0);
    assert_eq!(records[0]["value"], 2);
    assert_eq!(records[1]["graph6"], "Bw");
    assert_eq!(records[1]["value"], 2);
}

#[test]
fn family_is_an_input_source() {
    let doc = json(&nearly(&["alpha", "--k", "1", "--family", "path:9"], None));
    assert_eq!(doc["records"][0]["value"], 5);

    let doc = json(&nearly(&["good", "--family", "join(k1,empty(4))"], None));
    assert_eq!(doc["records"][0]["is_good"], true);

    let conflict = nearly(
        &["alpha", "--family", "path:9", "--input", "nope.g6"],
        None,
    );
    assert_eq!(conflict.status.code(), Some(2));
}

#[test]
fn alpha_and_oracle_agree() {
    let gen = nearly(&["gen", "cycle:9"], None);
    let g6 = stdout(&gen);
    let fast = json(&nearly(&["alpha", "--k", "1"], Some(&g6)));
    let brute = json(&nearly(&["oracle", "--k", "1"], Some(&g6)));
    assert_eq!(fast["records"][0]["value"], brute["records"][0]["value"]);
    assert_eq!(brute["records"][0]["method"], "oracle");
    assert_eq!(fast["records"][0]["value"], 5);
}

#[test]
fn oracle_guard_is_an_input_error() {
    let refused = nearly(&["oracle", "--k", "0"], Some("30 0\n"));
    assert_eq!(refused.status.code(), Some(2));
    let err = String::from_utf8(refused.stderr).unwrap();
    assert!(err.contains("guard"), "stderr should name the guard: {err}");
}

#[test]
fn gen_accepts_recipes_and_good_reports_them() {
    let gen = nearly(&["gen", "join(bip(2,3),empty(2))"], None);
    assert!(gen.status.success());
    let good = json(&nearly(&["good", "--decompose"], Some(&stdout(&gen))));
    let record = &good["records"][0];
    assert_eq!(record["is_good"], true);
    assert_eq!(record["connected"], true);
    assert_eq!(record["decomposition"]["kind"], "join");

    let c5 = nearly(&["gen", "cycle:5"], None);
    let good = json(&nearly(&["good"], Some(&stdout(&c5))));
    let record = &good["records"][0];
    assert_eq!(record["is_good"], false);
    assert_eq!(record["bad_edges"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_passes_and_sets_exit_codes() {
    let ok = nearly(&["verify", "--theorem", "T3", "--n", "6"], None);
    assert_eq!(ok.status.code(), Some(0));
    let doc = json(&ok);
    assert_eq!(doc["reports"][0]["pass"], true);
    assert_eq!(doc["reports"][0]["graphs_examined"], 32768);

    let range = nearly(&["verify", "--theorem", "T4", "--n", "3..5"], None);
    assert_eq!(range.status.code(), Some(0));
    assert_eq!(json(&range)["reports"].as_array().unwrap().len(), 3);

    let unknown = nearly(&["verify", "--theorem", "T9", "--n", "4"], None);
    assert_eq!(unknown.status.code(), Some(2));

    let over_budget = nearly(&["verify", "--theorem", "T1", "--n", "8"], None);
    assert_eq!(over_budget.status.code(), Some(2));
}

#[test]
fn verify_reads_corpora() {
    let dir = std::env::temp_dir().join(format!("nearly-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("five.g6");
    let mut lines = String::new();
    for spec in ["path:4", "cycle:4", "complete:4", "star:4", "empty:4"] {
        let out = nearly(&["gen", spec], None);
        lines.push_str(&stdout(&out));
    }
    std::fs::write(&path, &lines).unwrap();

    let run = nearly(
        &[
            "verify",
            "--theorem",
            "T1",
            "--input",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(
        run.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&run.stderr)
    );
    let doc = json(&run);
    assert_eq!(doc["reports"][0]["graphs_examined"], 5);
    assert_eq!(doc["reports"][0]["pass"], true);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn malformed_input_is_exit_2_with_line_diagnostics() {
    let bad = nearly(&["alpha", "--k", "1"], Some("2 1\n0 0\n"));
    assert_eq!(bad.status.code(), Some(2));
    let err = String::from_utf8(bad.stderr).unwrap();
    assert!(err.contains("line 2"), "diagnostic names the line: {err}");

    let bad6 = nearly(&["alpha"], Some("A?extra~~~\n"));
    assert_eq!(bad6.status.code(), Some(2));

    let empty = nearly(&["alpha"], Some(""));
    assert_eq!(empty.status.code(), Some(2));

    let badspec = nearly(&["gen", "path:one"], None);
    assert_eq!(badspec.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_deterministic_modulo_timings() {
    let input = "DQc\nD?{\nBw\n";
    let first = nearly(&["alpha", "--k", "1"], Some(input));
    let second = nearly(&["alpha", "--k", "1"], Some(input));
    let mut a = json(&first);
    let mut b = json(&second);
    strip_micros(&mut a);
    strip_micros(&mut b);
    assert_eq!(a, b);

    // gen output carries no timings at all: byte-identical runs.
    let g1 = nearly(&["gen", "broom:6,3"], None);
    let g2 = nearly(&["gen", "broom:6,3"], None);
    assert_eq!(g1.stdout, g2.stdout);

    let b1 = json(&nearly(&["bench", "--seed", "7"], None));
    let b2 = json(&nearly(&["bench", "--seed", "7"], None));
    let (mut b1, mut b2) = (b1, b2);
    strip_micros(&mut b1);
    strip_micros(&mut b2);
    // micros keys differ run to run; everything else is fixed by the seed.
    fn strip_timing_fields(v: &mut serde_json::Value) {
        if let serde_json::Value::Object(map) = v {
            map.remove("alpha0_micros");
            map.remove("alpha1_micros");
            for v in map.values_mut() {
                strip_timing_fields(v);
            }
        } else if let serde_json::Value::Array(items) = v {
            items.iter_mut().for_each(strip_timing_fields);
        }
    }
    strip_timing_fields(&mut b1);
    strip_timing_fields(&mut b2);
    assert_eq!(b1, b2);
}

#[test]
fn thread_env_var_is_honored() {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nearly"));
    cmd.args(["verify", "--theorem", "T2", "--n", "5"])
        .env("NEARLY_INDEP_THREADS", "2")
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    let out = cmd.output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["reports"][0]["pass"], true);
}
