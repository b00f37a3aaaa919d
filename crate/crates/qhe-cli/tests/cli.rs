//! End-to-end checks of the `qhe` binary: argument handling, config-file
//! merging, output formats, determinism across thread counts, and the exit
//! code contract (0 ok, 1 numerical/check failure, 2 usage).

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn qhe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn qhe_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhe"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout parses as JSON")
}

fn tmp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("qhe-cli-{}-{name}", std::process::id()))
}

const QUARTER_TURN: &str = "1.5707963267948966";

#[test]
fn run_reports_the_swap_transfer_in_json() {
    let out = qhe(&[
        "run", "--engine", "seq-out", "--A", "50", "--Th", "100", "--Tc", "5", "--lambda",
        QUARTER_TURN,
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["engine"], "seq-out");
    let metrics = v["metrics"].as_object().expect("metrics object");
    assert_eq!(metrics.len(), 7, "metrics keys: {metrics:?}");
    let w = metrics["w_battery"].as_f64().unwrap();
    let q_total = metrics["q_total"].as_f64().unwrap();
    let eta = metrics["eta"].as_f64().unwrap();
    let pcg = metrics["pcg"].as_f64().unwrap();
    assert!((w - 14.5192762097576).abs() <= 1e-9, "w = {w}");
    assert!((pcg - 200.0 * w / 50.0).abs() <= 1e-9, "pcg = {pcg}");
    assert!((eta - w / q_total).abs() <= 1e-12, "eta = {eta}");
    assert_eq!(v["params"]["a"], 50.0);
    assert_eq!(v["params"]["steady_tol"], 1e-10);
}

#[test]
fn zero_angle_run_moves_no_energy() {
    let out = qhe(&[
        "run", "--engine", "seq-out", "--A", "50", "--Th", "10", "--Tc", "10", "--lambda", "0",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let w = v["metrics"]["w_battery"].as_f64().unwrap();
    let q_hot = v["metrics"]["q_hot"].as_f64().unwrap();
    assert!(w.abs() <= 1e-12, "w = {w}");
    assert!(q_hot.abs() <= 1e-12, "q_hot = {q_hot}");
}

#[test]
fn run_writes_the_report_to_a_file() {
    let path = tmp_path("run.json");
    let out = qhe(&[
        "run", "--engine", "seq-out", "--A", "50", "--Th", "10", "--Tc", "10", "--lambda", "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty(), "report went to the file, not stdout");
    let v: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).expect("file parses");
    assert_eq!(v["engine"], "seq-out");
    fs::remove_file(&path).ok();
}

#[test]
fn missing_parameters_and_unknown_engines_are_usage_errors() {
    let out = qhe(&["run", "--engine", "seq-out", "--Th", "10", "--Tc", "5"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("missing --A"), "stderr: {}", stderr(&out));

    let out = qhe(&[
        "run", "--engine", "qutrit", "--A", "1", "--Th", "2", "--Tc", "1", "--lambda", "0",
    ]);
    assert_eq!(code(&out), 2);

    let out = qhe(&["--threads", "0", "verify"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sweep_is_deterministic_and_round_trips_twelve_digits() {
    let base = [
        "sweep", "--engine", "seq-out", "--tu-min", "10", "--tu-max", "30", "--tu-steps", "3",
        "--fast", "--eta-vs-tc", "5,40",
    ];
    let mut one = base.to_vec();
    one.extend(["--threads", "1"]);
    let mut two = base.to_vec();
    two.extend(["--threads", "2"]);
    let run_one = qhe(&one);
    let run_two = qhe(&two);
    let run_env = qhe_env(&base, "QHE_THREADS", "2");
    assert_eq!(code(&run_one), 0, "stderr: {}", stderr(&run_one));
    assert_eq!(stdout(&run_one), stdout(&run_two), "thread count changed a table");
    assert_eq!(stdout(&run_one), stdout(&run_env), "env thread count changed a table");

    let text = stdout(&run_one);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "t_u,w_m,pcg,eta,a_star,th_star,tc_star,lambda_star,omega_sb_star,t2_star,q_total,eta_tc_5,eta_tc_40"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        assert_eq!(cells.len(), 13);
        for cell in &cells[..11] {
            let value: f64 = cell.parse().expect("numeric cell");
            assert_eq!(format!("{value:.11e}"), *cell, "cell not 12 significant digits");
        }
        // reachable cold lead: finite efficiency; T_C above every T_H*: NaN
        let eta_cold: f64 = cells[11].parse().unwrap();
        assert!(eta_cold.is_finite() && eta_cold > 0.0, "eta_tc_5 = {eta_cold}");
        assert_eq!(cells[12], "NaN");
    }
}

#[test]
fn config_file_merges_under_flags_and_rejects_unknown_keys() {
    let path = tmp_path("run.cfg");
    fs::write(
        &path,
        format!("# engine setup\nengine=seq-out\nA=10\nTh=100\nTc=5\nlambda={QUARTER_TURN}\n"),
    )
    .unwrap();
    let cfg = path.to_str().unwrap();

    let from_file = qhe(&["run", "--config", cfg]);
    assert_eq!(code(&from_file), 0, "stderr: {}", stderr(&from_file));
    assert_eq!(json(&from_file)["params"]["a"], 10.0);

    let overridden = qhe(&["run", "--config", cfg, "--A", "50"]);
    assert_eq!(code(&overridden), 0);
    let v = json(&overridden);
    assert_eq!(v["params"]["a"], 50.0);
    let w = v["metrics"]["w_battery"].as_f64().unwrap();
    assert!((w - 14.5192762097576).abs() <= 1e-9, "flag override ignored: w = {w}");

    fs::write(&path, "engine=seq-out\nA=10\nTh=100\nTc=5\nlambda=0\nbogus=1\n").unwrap();
    let rejected = qhe(&["run", "--config", cfg]);
    assert_eq!(code(&rejected), 2);
    assert!(stderr(&rejected).contains("bogus"), "stderr: {}", stderr(&rejected));
    fs::remove_file(&path).ok();
}

#[test]
fn steady_tolerance_changes_the_reached_state() {
    let base = [
        "run", "--engine", "seq-frag", "--A", "10", "--Th", "10", "--Tc", "2", "--lambda",
        QUARTER_TURN,
    ];
    let tight = qhe(&base);
    let mut loose_args = base.to_vec();
    loose_args.extend(["--steady-tol", "1e-3"]);
    let loose = qhe(&loose_args);
    assert_eq!(code(&tight), 0);
    assert_eq!(code(&loose), 0);
    assert_eq!(json(&loose)["params"]["steady_tol"], 1e-3);
    let w_tight = json(&tight)["metrics"]["w_battery"].as_f64().unwrap();
    let w_loose = json(&loose)["metrics"]["w_battery"].as_f64().unwrap();
    assert!(
        (w_tight - w_loose).abs() > 1e-12,
        "loosening the tolerance did not move the answer: {w_tight} vs {w_loose}"
    );
}

#[test]
fn verify_battery_passes_and_filters_by_name() {
    let all = qhe(&["verify"]);
    assert_eq!(code(&all), 0, "stdout: {}", stdout(&all));
    assert!(stdout(&all).contains("running 9 of 9 checks"));
    assert!(!stdout(&all).contains("FAIL"));

    let some = qhe(&["verify", "--only", "operators"]);
    assert_eq!(code(&some), 0);
    assert!(stdout(&some).contains("running 2 of 9 checks"));

    let none = qhe(&["verify", "--only", "nonsense"]);
    assert_eq!(code(&none), 2);
    assert!(stderr(&none).contains("no verification check matches"));
}

#[test]
fn negated_coupling_is_caught_by_the_fixed_point_checks() {
    let out = qhe(&["verify", "--negate-kappa"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("FAIL"), "stdout: {}", stdout(&out));
}

#[test]
fn compare_writes_the_table_and_ordering_summary() {
    let path = tmp_path("compare.csv");
    let out = qhe(&[
        "compare", "--engines", "seq-out,seq-frag", "--fast", "--tu-min", "20", "--tu-max",
        "50", "--tu-steps", "2", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "stderr: {}", stderr(&out));
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("engine,t_u,"));
    assert!(text.contains("\nseq-out,"));
    assert!(text.contains("\nseq-frag,"));
    assert!(text.contains("# engines: seq-out,seq-frag"));
    assert!(text.contains("# ordering: all expectations hold on the grid"));
    assert!(!text.contains("# FAIL"));
    fs::remove_file(&path).ok();
}

#[test]
fn compare_rejects_unknown_engine_names() {
    let out = qhe(&["compare", "--engines", "maxwell-demon"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn degenerate_sweep_grids_are_usage_errors() {
    let out = qhe(&[
        "sweep", "--engine", "seq-out", "--tu-min", "10", "--tu-max", "30", "--tu-steps", "0",
    ]);
    assert_eq!(code(&out), 2);
    let out = qhe(&[
        "sweep", "--engine", "seq-out", "--tu-min", "10", "--tu-max", "30", "--tu-steps", "1",
    ]);
    assert_eq!(code(&out), 2);
}
