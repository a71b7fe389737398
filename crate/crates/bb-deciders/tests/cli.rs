//! End-to-end tests of the `bbd` binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use bb_deciders::db::{encode_db_record, HEADER_SIZE};
use bb_deciders::machine::machines;
use bb_deciders::TransitionTable;

fn bbd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bbd")).args(args).output().expect("bbd runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

fn temp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bbd-test-{name}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn simulate_reports_the_halt_step() {
    let output = bbd(&["simulate", "--machine", "------", "--steps", "5"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("halted at step 1"));
}

#[test]
fn decide_writes_results_and_verifiable_certificates() {
    let dir = temp_dir("decide");
    let out = dir.to_str().unwrap();
    let output = bbd(&[
        "decide",
        "--machine",
        machines::FAR_COUNTER,
        "--pipeline",
        "far-direct:4",
        "--out",
        out,
    ]);
    assert!(output.status.success());
    let line = stdout(&output);
    assert!(line.contains(r#""verdict":"nonhalt""#));
    assert!(line.contains(r#""decider":"far-direct""#));
    let results = fs::read_to_string(dir.join("results.jsonl")).unwrap();
    assert_eq!(results, line);

    let cert = dir.join("cert_0_far.json");
    assert!(cert.exists());
    let verify = bbd(&["verify", "--kind", "far", cert.to_str().unwrap()]);
    assert!(verify.status.success());
    assert!(stdout(&verify).contains("pass"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn decide_output_is_identical_at_any_thread_count() {
    let machines_args = [
        machines::CYCLER,
        machines::RIGHT_RUNNER,
        machines::HALTING_SEGMENT,
        machines::FAR_COUNTER,
    ];
    // Build a small database of the four machines and decide it whole.
    let dir = temp_dir("threads");
    let mut db_bytes = vec![0u8; HEADER_SIZE];
    for text in machines_args {
        let table: TransitionTable = text.parse().unwrap();
        db_bytes.extend(encode_db_record(&table, true));
    }
    let db_path = dir.join("seed.db");
    fs::write(&db_path, &db_bytes).unwrap();

    let run = |threads: &str| {
        let output = bbd(&[
            "decide",
            "--db",
            db_path.to_str().unwrap(),
            "--pipeline",
            "cyclers:1000,translated-cyclers:1000,far-direct:4",
            "--threads",
            threads,
        ]);
        assert!(output.status.success());
        stdout(&output)
    };
    let single = run("1");
    assert_eq!(run("4"), single);
    assert_eq!(single.lines().count(), 4);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn corrupt_database_records_are_skipped_not_fatal() {
    let dir = temp_dir("corrupt");
    let mut db_bytes = vec![0u8; HEADER_SIZE];
    let table: TransitionTable = machines::CYCLER.parse().unwrap();
    db_bytes.extend(encode_db_record(&table, true));
    let mut bad = [0u8; 30];
    bad[2] = 9; // next-state byte out of range
    db_bytes.extend(bad);
    db_bytes.extend(encode_db_record(&table, true));
    let db_path = dir.join("seed.db");
    fs::write(&db_path, &db_bytes).unwrap();

    let output = bbd(&[
        "decide",
        "--db",
        db_path.to_str().unwrap(),
        "--pipeline",
        "cyclers:1000",
    ]);
    assert!(output.status.success());
    assert_eq!(stdout(&output).lines().count(), 2);
    assert!(String::from_utf8_lossy(&output.stderr).contains("skipping record 1"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn db_scan_lists_machine_strings() {
    let dir = temp_dir("scan");
    let mut db_bytes = vec![0u8; HEADER_SIZE];
    let table: TransitionTable = machines::BB5_CHAMPION.parse().unwrap();
    db_bytes.extend(encode_db_record(&table, true));
    db_bytes.extend([0u8; 30]);
    let db_path = dir.join("seed.db");
    fs::write(&db_path, &db_bytes).unwrap();

    let output = bbd(&["db", "scan", "--db", db_path.to_str().unwrap()]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains(machines::BB5_CHAMPION));
    assert!(text.contains("------_------_------_------_------"));

    let output = bbd(&["db", "scan", "--db", db_path.to_str().unwrap(), "--index", "0..1"]);
    assert_eq!(stdout(&output).lines().count(), 1);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_file_sets_defaults_and_flags_win() {
    let dir = temp_dir("config");
    let config_path = dir.join("bbd.conf");
    fs::write(&config_path, "# settings\npipeline = cyclers:1000\nhalt-check = 100\n").unwrap();
    // The config pipeline decides the cycler...
    let output = bbd(&[
        "decide",
        "--machine",
        machines::CYCLER,
        "--config",
        config_path.to_str().unwrap(),
    ]);
    assert!(stdout(&output).contains(r#""decider":"cyclers""#));
    // ...but an explicit flag overrides it with a pipeline that cannot.
    let output = bbd(&[
        "decide",
        "--machine",
        machines::CYCLER,
        "--config",
        config_path.to_str().unwrap(),
        "--pipeline",
        "translated-cyclers:1000",
    ]);
    assert!(stdout(&output).contains(r#""verdict":"unknown""#));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn diagram_writes_a_ppm() {
    let dir = temp_dir("diagram");
    let img = dir.join("img.ppm");
    let output = bbd(&[
        "diagram",
        "--machine",
        machines::BOUNCER,
        "--steps",
        "50",
        "--out",
        img.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    let bytes = fs::read(&img).unwrap();
    assert!(bytes.starts_with(b"P6\n"));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_rejects_a_tampered_certificate() {
    let dir = temp_dir("verify");
    let out = dir.to_str().unwrap();
    bbd(&[
        "decide",
        "--machine",
        machines::BOUNCER,
        "--pipeline",
        "bouncers:1000:200:16",
        "--out",
        out,
    ]);
    let cert_path = dir.join("cert_0_bouncer.json");
    let mut cert: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&cert_path).unwrap()).unwrap();
    cert["macro_steps"] = serde_json::json!(1);
    fs::write(&cert_path, cert.to_string()).unwrap();
    let output = bbd(&["verify", "--kind", "bouncer", cert_path.to_str().unwrap()]);
    assert!(!output.status.success());
    assert!(stdout(&output).contains("fail"));
    fs::remove_dir_all(&dir).unwrap();
}
