use std::process::{Command, Output};

fn mxik(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mxik")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn sanity_prints_every_unit() {
    let o = mxik(&["sanity"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for u in ["m", "dm", "cm", "mm"] {
        assert!(text.contains(&format!("== unit {u} ==")));
    }
    assert!(text.contains("-0.02734497"));
}

#[test]
fn benchmark_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = mxik(&["benchmark", "--robot", "planar3", "--count", "5", "--method", "MX,MP", "--jacobian", "G", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("%IPs 100.0"));
    for f in ["report.csv", "report.json", "motions.txt"] {
        assert!(dir.path().join(f).is_file(), "{f}");
    }
    let first = report_without_timing(dir.path());

    // replaying the saved motions gives the same report
    let again = tempfile::tempdir().unwrap();
    let motions = dir.path().join("motions.txt");
    let o = mxik(&[
        "benchmark", "--method", "MX,MP", "--jacobian", "G",
        "--motions", motions.to_str().unwrap(), "--out", again.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(report_without_timing(again.path()), first);
    assert_eq!(first["count"], 5);
}

fn report_without_timing(dir: &std::path::Path) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join("report.json")).unwrap();
    let mut json: serde_json::Value = serde_json::from_str(&text).unwrap();
    for cell in json["cells"].as_array_mut().unwrap() {
        cell["mean_wall_time_ms"] = serde_json::Value::Null;
    }
    json
}

#[test]
fn motion_sweep_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = mxik(&["motion", "--robot", "scara4", "--method", "MP", "--alpha", "1,0.5", "--index", "2", "--out", out]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(dir.path().join("paths_m.svg").is_file());
    assert!(dir.path().join("traj_mm_a0.5.csv").is_file());
}

#[test]
fn config_file_is_read_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "robot = \"no-such-robot\"\ncount = 3\nmethod = [\"MX\"]\njacobian = [\"G\"]\n").unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(mxik(&["--config", c, "benchmark"]).status.code(), Some(2));
    let o = mxik(&["--config", c, "benchmark", "--robot", "planar3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("3 motions"));
}

#[test]
fn config_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "colour = 3\n").unwrap();
    let cases: [&[&str]; 5] = [
        &["benchmark", "--robot", "nope"],
        &["benchmark", "--method", "XX"],
        &["benchmark", "--alpha", "1.5"],
        &["benchmark", "--alpha", "1,0.5"],
        &["--config", bad.to_str().unwrap(), "sanity"],
    ];
    for args in cases {
        let o = mxik(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
    assert_eq!(mxik(&["--config", "/nonexistent/x.toml", "sanity"]).status.code(), Some(2));
}

#[test]
fn model_command_prints_the_bundled_file() {
    let o = mxik(&["model", "wam7"]);
    assert!(o.status.success());
    let bundled = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/models/wam7.dh")).unwrap();
    assert_eq!(stdout(&o), bundled);
}
