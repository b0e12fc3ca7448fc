use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wavecov")).arg("--out").arg(dir).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn derive_writes_json_and_trace_with_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["derive", "galilean", "2"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("iħ∂_tΨ = −(ħ²/2m)∇²Ψ + VΨ"));
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("derive-galilean-2.json")).unwrap()).unwrap();
    assert_eq!(json["manifest"]["command"], serde_json::json!(["derive", "galilean", "2"]));
    assert_eq!(json["result"]["reports"][0]["values"]["Cbar/Bbar"], "2*i*m/ħ");
    let txt = fs::read_to_string(dir.path().join("derive-galilean-2.txt")).unwrap();
    assert!(txt.starts_with("# manifest: {"));
}

#[test]
fn derive_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["derive", "galilean", "3"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("collapses to order 2"));
    let o = run(dir.path(), &["derive", "lorentz", "2"]);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("derive-lorentz-2.json")).unwrap()).unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json["result"]["reports"].as_array().unwrap().len(), 2);
    assert_eq!(code(&run(dir.path(), &["derive", "lorentz", "3"])), 2);
    assert_eq!(code(&run(dir.path(), &["derive", "galilean", "5"])), 2);
}

#[test]
fn derive_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run(a.path(), &["derive", "galilean", "4"]);
    run(b.path(), &["derive", "galilean", "4"]);
    for f in ["derive-galilean-4.json", "derive-galilean-4.txt"] {
        assert_eq!(fs::read(a.path().join(f)).unwrap(), fs::read(b.path().join(f)).unwrap(), "{f}");
    }
}

#[test]
fn config_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    for (text, line) in [("t = 1\nwobble = 2\n", "line 2"), ("n = 1024\n\nsigma 2\n", "line 3"), ("t = 1\nt = 2\n", "line 2"), ("t = soon\n", "line 1")] {
        fs::write(&cfg, text).unwrap();
        let o = run(dir.path(), &["verify", "boost", cfg.to_str().unwrap()]);
        assert_eq!(code(&o), 2, "{text:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(line), "{text:?}: {err}");
    }
    let o = run(dir.path(), &["verify", "boost", dir.path().join("missing.cfg").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(dir.path(), &["bogus"])), 2);
    assert_eq!(code(&run(dir.path(), &["verify", "speed"])), 2);
    assert_eq!(code(&run(dir.path(), &["--tolerance", "1e-3", "derive", "galilean", "2"])), 2);
    let cfg = dir.path().join("kg.cfg");
    fs::write(&cfg, "equation = klein_gordon\n").unwrap();
    assert_eq!(code(&run(dir.path(), &["verify", "boost", cfg.to_str().unwrap()])), 2);
}

#[test]
fn quantitative_failure_exits_one_and_names_the_row() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("tight.cfg");
    fs::write(&cfg, "slope = -3\n").unwrap();
    let o = run(dir.path(), &["verify", "nr-limit", cfg.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("slope"));
    // tables are still written on failure
    assert!(dir.path().join("verify-nr-limit.csv").exists());
}

#[test]
fn simulate_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sim.cfg");
    fs::write(&cfg, "equation = lcse\nn = 128\nt = 0.5\nframes = 3\n").unwrap();
    assert_eq!(code(&run(dir.path(), &["--seed", "7", "simulate", cfg.to_str().unwrap()])), 0);
    let csv = fs::read_to_string(dir.path().join("simulate-lcse.csv")).unwrap();
    let mut lines = csv.lines();
    let manifest = lines.next().unwrap();
    assert!(manifest.contains("\"seed\":\"7\""), "{manifest}");
    assert!(manifest.contains("input_hashes"));
    assert_eq!(lines.next(), Some("t,x,re,im"));
    assert_eq!(lines.count(), 4 * 128);

    let target = dir.path().join("simulate-lcse.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_wavecov")).arg("replay").arg(&target).output().unwrap();
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));

    let edited = csv.replacen("t,x,re,im\n0", "t,x,re,im\n1", 1);
    fs::write(&target, edited).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_wavecov")).arg("replay").arg(&target).output().unwrap();
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("DIFFERS simulate-lcse.csv"));
}
