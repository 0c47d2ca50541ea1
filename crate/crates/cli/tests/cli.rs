use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const SHALLOW: &str = r#"{
  "layers": [
    {"thickness_m": null, "conductivity": 1e-11},
    {"thickness_m": 100, "conductivity": 4.0},
    {"thickness_m": 500, "conductivity": 1.5},
    {"thickness_m": 100, "conductivity": 0.001},
    {"thickness_m": null, "conductivity": 1.5}
  ],
  "survey": {
    "frequency_hz": 0.125, "source_height_m": 30, "dipole_moment": 1, "azimuth_deg": 0,
    "offsets": {"start_m": 500, "stop_m": 25000, "step_m": 500}
  },
  "run": {"weights": [1e5, 1e6, 1e7], "seed": 4}
}"#;

fn sbl(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbl"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn setup(config: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    fs::write(&path, config).unwrap();
    (dir, path)
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn forward_writes_one_row_per_offset_and_is_reproducible() {
    let (dir, _) = setup(SHALLOW);
    let out = sbl(
        dir.path(),
        &["--config", "config.json", "--out", "o", "forward"],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let first = fs::read(dir.path().join("o/forward.csv")).unwrap();
    let text = String::from_utf8(first.clone()).unwrap();
    assert_eq!(data_rows(&text).len(), 50);
    assert!(text.contains("# provenance: layered-solver"));
    assert!(text.contains("# command: forward"));

    let again = sbl(
        dir.path(),
        &[
            "forward",
            "--config",
            "config.json",
            "--out",
            "o",
            "--seed",
            "4",
        ],
    );
    assert!(again.status.success());
    assert_eq!(fs::read(dir.path().join("o/forward.csv")).unwrap(), first);
}

#[test]
fn invalid_config_exits_two_without_output() {
    let (dir, _) = setup(&SHALLOW.replace("\"conductivity\": 4.0", "\"conductivity\": 0.0"));
    let out = sbl(
        dir.path(),
        &["--config", "config.json", "--out", "o", "forward"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonpositive conductivity"));
    assert!(!dir.path().join("o").exists());

    let out = sbl(dir.path(), &["--out", "o", "forward"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sbl(dir.path(), &["--config", "missing.json", "forward"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn broadside_airwave_is_zero() {
    let (dir, _) = setup(&SHALLOW.replace("\"azimuth_deg\": 0", "\"azimuth_deg\": 90"));
    let out = sbl(dir.path(), &["--config", "config.json", "airwave"]);
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("airwave.csv")).unwrap();
    for row in data_rows(&text) {
        assert_eq!(row[3].parse::<f64>().unwrap(), 0.0);
    }
}

#[test]
fn airwave_depth_series_reports_slope() {
    let config = SHALLOW.replace(
        "\"seed\": 4}",
        "\"seed\": 4, \"depths_m\": [100, 300, 500, 700, 900, 1000]}",
    );
    let (dir, _) = setup(&config);
    let out = sbl(
        dir.path(),
        &["--config", "config.json", "--out", "air", "airwave"],
    );
    assert!(out.status.success());
    for d in [100, 300, 500, 700, 900, 1000] {
        let text =
            fs::read_to_string(dir.path().join(format!("air/airwave_depth{d}m.csv"))).unwrap();
        let slope: f64 = text
            .lines()
            .find_map(|l| l.strip_prefix("# loglog_slope: "))
            .unwrap()
            .parse()
            .unwrap();
        assert!((slope + 3.0).abs() < 1e-9);
    }
}

fn write_pair(dir: &Path) {
    for cmd in ["forward", "airwave"] {
        let out = sbl(dir, &["--config", "config.json", cmd]);
        assert!(out.status.success());
    }
}

#[test]
fn separate_uses_default_weight_and_writes_diagnostics() {
    let (dir, _) = setup(SHALLOW);
    write_pair(dir.path());
    let out = sbl(
        dir.path(),
        &[
            "--config",
            "config.json",
            "--out",
            "sep",
            "separate",
            "forward.csv",
            "airwave.csv",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let signal = fs::read_to_string(dir.path().join("sep/signal.csv")).unwrap();
    assert!(signal.contains("# weight: 1e6"));
    assert!(signal.contains("# airwave_correlation: "));
    assert!(signal.contains("# provenance: separated-component"));
    assert!(signal.contains("# input_sha256 measured: "));
    assert_eq!(data_rows(&signal).len(), 50);
    assert!(dir.path().join("sep/airwave_recovered.csv").exists());
    let diag = fs::read_to_string(dir.path().join("sep/separation.json")).unwrap();
    assert!(diag.contains("\"reconstruction_rms_relative\""));
}

#[test]
fn separate_rejects_misaligned_profiles() {
    let (dir, _) = setup(SHALLOW);
    write_pair(dir.path());
    let text = fs::read_to_string(dir.path().join("airwave.csv")).unwrap();
    let trimmed: String = text
        .lines()
        .filter(|l| !l.starts_with("1.0000000000000000e3,"))
        .map(|l| format!("{l}\n"))
        .collect();
    fs::write(dir.path().join("short.csv"), trimmed).unwrap();
    let out = sbl(
        dir.path(),
        &["--out", "bad", "separate", "forward.csv", "short.csv"],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("alignment"));
    assert!(!dir.path().join("bad").exists());
}

#[test]
fn sweep_with_and_without_reference() {
    let (dir, _) = setup(SHALLOW);
    write_pair(dir.path());
    let out = sbl(
        dir.path(),
        &[
            "--config",
            "config.json",
            "--out",
            "a",
            "sweep",
            "forward.csv",
            "airwave.csv",
        ],
    );
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = data_rows(&fs::read_to_string(dir.path().join("a/sweep.csv")).unwrap());
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r[5].is_empty() && r[6] == "true"));

    let out = sbl(
        dir.path(),
        &[
            "--config",
            "config.json",
            "--out",
            "b",
            "--window",
            "15000,20000",
            "sweep",
            "forward.csv",
            "airwave.csv",
            "forward.csv",
        ],
    );
    assert!(out.status.success());
    let rows = data_rows(&fs::read_to_string(dir.path().join("b/sweep.csv")).unwrap());
    assert_eq!(rows.len(), 9);
    let offsets: Vec<&str> = rows[..3].iter().map(|r| r[2].as_str()).collect();
    assert_eq!(
        offsets,
        [
            "1.5000000000000000e4",
            "2.0000000000000000e4",
            "2.5000000000000000e4"
        ]
    );
    assert!(rows.iter().all(|r| r[5].parse::<f64>().is_ok()));

    let out = sbl(
        dir.path(),
        &["--config", "config.json", "sweep", "forward.csv"],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_window_flag_is_a_usage_error() {
    let (dir, _) = setup(SHALLOW);
    let out = sbl(
        dir.path(),
        &[
            "--config",
            "config.json",
            "--window",
            "25000,15000",
            "sweep",
        ],
    );
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bundled_configs_run() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    for (name, files) in [("shallow_sweep.json", 6), ("deep_reservoir.json", 1)] {
        let dir = tempfile::tempdir().unwrap();
        let config = root.join(name);
        let out = sbl(
            dir.path(),
            &["--config", config.to_str().unwrap(), "--out", "o", "forward"],
        );
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(fs::read_dir(dir.path().join("o")).unwrap().count(), files);
    }
}
