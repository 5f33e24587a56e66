use std::path::Path;
use std::process::{Command, Output};

use hypspec::geometry::LengthSpectrum;

fn hypspec(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypspec"))
        .args(args)
        .arg("--output")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn error_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stderr).expect("error JSON on stderr")
}

const SMALL_LIST: &str = "lambda,multiplicity,sigma_min,half_width,basis_N\n\
0.0,1,0.0,0.0,24\n\
3.838887257722501,3,6.7e-9,2.1e-8,24\n\
5.353601341184396,4,7.0e-9,3.5e-8,24\n";

#[test]
fn solve1d_writes_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let o = hypspec(dir.path(), &["solve1d", "--potential", "zero", "--range", "1", "25", "--step", "0.5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(dir.path().join("eigenvalues_1d.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows.len(), 4, "{csv}");
    let first: f64 = rows[1].split(',').next().unwrap().parse().unwrap();
    assert!((first - std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-9);
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    for key in ["subcommand", "version", "core_version", "threads", "seeds", "config", "outputs", "wall_time_s"] {
        assert!(m.get(key).is_some(), "manifest lacks {key}");
    }
    assert_eq!(m["subcommand"], "solve1d");
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["solve1d", "--potential", "parabolic5", "--range", "1", "40"];
    assert!(hypspec(a.path(), &args).status.success());
    assert!(hypspec(b.path(), &args).status.success());
    let read = |d: &Path| std::fs::read(d.join("eigenvalues_1d.csv")).unwrap();
    assert_eq!(read(a.path()), read(b.path()));
}

#[test]
fn length_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = hypspec(dir.path(), &["length-spectrum", "--surface", "bolza", "--l-max", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read(dir.path().join("lengths.txt")).unwrap();
    let ls = LengthSpectrum::read(text.as_slice()).unwrap();
    assert_eq!(ls.entries.len(), 2);
    assert_eq!(ls.entries[0].1, 24);
    let mut again = Vec::new();
    ls.write(&mut again).unwrap();
    assert_eq!(again, text);
}

#[test]
fn unknown_config_key_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "[solve1d]\nhalf_length = 1.0\nbogus = 3\n").unwrap();
    let o = hypspec(dir.path(), &["--config", cfg.to_str().unwrap(), "solve1d"]);
    assert_eq!(o.status.code(), Some(1));
    let e = error_json(&o);
    assert_eq!(e["error"]["kind"], "config");
    assert!(e["error"]["message"].as_str().unwrap().contains("bogus") || e.to_string().contains("bogus"));
}

#[test]
fn bad_flag_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = hypspec(dir.path(), &["solve-surface", "--no-such-flag"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_json(&o)["error"]["kind"], "config");
}

#[test]
fn missing_eigenvalue_file_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = hypspec(dir.path(), &["det", "--surface", "bolza", "--eigenvalues", "/nonexistent.csv"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn pole_is_a_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("ev.csv");
    std::fs::write(&list, SMALL_LIST).unwrap();
    let o = hypspec(
        dir.path(),
        &["zeta", "--surface", "bolza", "--eigenvalues", list.to_str().unwrap(), "--l-max", "5", "--s", "1"],
    );
    assert_eq!(o.status.code(), Some(2));
    let e = error_json(&o);
    assert_eq!(e["error"]["kind"], "numerical");
    assert!(e["error"]["chain"].is_array());
}

#[test]
fn zeta_json_has_budget_lines() {
    let dir = tempfile::tempdir().unwrap();
    let list = dir.path().join("ev.csv");
    std::fs::write(&list, SMALL_LIST).unwrap();
    let o = hypspec(
        dir.path(),
        &["zeta", "--surface", "bolza", "--eigenvalues", list.to_str().unwrap(), "--l-max", "5", "--s", "-1", "2"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("zeta.json")).unwrap()).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert!((arr[0]["value"].as_f64().unwrap() + 1.0 / 15.0).abs() < 1e-12);
    for key in ["spectral_tail", "length_tail", "quadrature", "heat_truncation", "total"] {
        assert!(arr[1]["budget"].get(key).is_some(), "budget lacks {key}");
    }
}
