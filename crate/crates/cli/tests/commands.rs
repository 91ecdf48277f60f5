use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn out_dir(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("ird-cli-test-{}-{tag}", std::process::id()));
    let _ = std::fs::remove_dir_all(&d);
    d
}

fn ird(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ird")).args(args).env("IRD_OUT", dir).output().expect("spawn ird")
}

fn read(dir: &Path, file: &str) -> String {
    std::fs::read_to_string(dir.join(file)).unwrap()
}

#[test]
fn spectrum_writes_header_and_columns() {
    let d = out_dir("spectrum");
    let o = ird(&d, &["spectrum", "--n", "12", "--s", "0.4", "--alpha", "1.0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = read(&d, "spectrum.csv");
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("# ird "));
    for kv in ["n=12", "s=0.4", "alpha=1.0", "command=spectrum", "tier=paper"] {
        assert!(header.contains(kv), "{header}");
    }
    assert_eq!(lines.next().unwrap(), "index,energy,sym_population,spin_number,parity");
    assert_eq!(lines.count(), 33);
}

#[test]
fn validate_passes_on_small_chain() {
    let d = out_dir("validate");
    let o = ird(&d, &["validate", "--n", "8", "--s", "0.5", "--alpha", "1.0", "--random-states", "3", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("PASS"));
    assert_eq!(read(&d, "validate.csv").lines().count(), 2 + 4);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let (a, b) = (out_dir("det-a"), out_dir("det-b"));
    let args = ["loschmidt", "--n", "10", "--s", "0.6", "--alpha", "0.4", "--theta-points", "4", "--phi-points", "5"];
    assert_eq!(ird(&a, &args).status.code(), Some(0));
    assert_eq!(ird(&b, &args).status.code(), Some(0));
    assert_eq!(std::fs::read(a.join("loschmidt.csv")).unwrap(), std::fs::read(b.join("loschmidt.csv")).unwrap());
}

#[test]
fn usage_errors_exit_one() {
    let d = out_dir("usage");
    assert_eq!(ird(&d, &["bogus"]).status.code(), Some(1));
    assert_eq!(ird(&d, &["spectrum", "--nope"]).status.code(), Some(1));
    assert_eq!(ird(&d, &["qpt", "--s-range", "0.9:0.5:0.1"]).status.code(), Some(1));
    assert_eq!(ird(&d, &["spectrum", "--n", "7"]).status.code(), Some(1));
    assert_eq!(ird(&d, &["--help"]).status.code(), Some(0));
}

#[test]
fn quick_tier_guards_resources() {
    let d = out_dir("quick");
    let o = ird(&d, &["spectrum", "--tier", "quick", "--n", "64"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource limit"));
    let o = ird(&d, &["quench", "--tier", "quick", "--t-points", "51"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(ird(&d, &["validate", "--n", "16"]).status.code(), Some(1));
}

#[test]
fn config_file_fills_missing_flags() {
    let d = out_dir("config");
    std::fs::create_dir_all(&d).unwrap();
    let cfg = d.join("run.cfg");
    std::fs::write(&cfg, "# demo\nn = 10\ns=0.7\nformat=json\nt_points=5\n").unwrap();
    let o = ird(&d, &["quench", "--config", cfg.to_str().unwrap(), "--n", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&read(&d, "quench.json")).unwrap();
    let header = v["header"].as_str().unwrap();
    assert!(header.contains("n=8") && header.contains("s=0.7") && header.contains("t_points=5"), "{header}");
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
}

#[test]
fn qpt_dqpt_crossover_in_window() {
    let d = out_dir("qpt");
    let o = ird(&d, &["qpt", "--mode", "dqpt", "--n", "256", "--alpha", "1", "--s-range", "0.5:1.0:0.01"]);
    assert_eq!(o.status.code(), Some(0));
    let text = read(&d, "qpt.csv");
    let rows: Vec<Vec<f64>> =
        text.lines().skip(2).map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(text.lines().nth(1), Some("s,z_bar"));
    let (mut best, mut at) = (f64::NEG_INFINITY, 0.0);
    for w in rows.windows(2) {
        let slope = (w[1][1] - w[0][1]) / (w[1][0] - w[0][0]);
        if slope > best {
            best = slope;
            at = 0.5 * (w[0][0] + w[1][0]);
        }
    }
    assert!((0.60..=0.75).contains(&at), "crossover {at}");
}

#[test]
fn fssa_emits_raw_and_scaled_curves() {
    let d = out_dir("fssa");
    let o = ird(&d, &["fssa", "--sizes", "32,64", "--s-range", "0.3:0.6:0.002"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["fssa_raw.csv", "fssa_minima.csv", "fssa_scaled.csv"] {
        assert!(read(&d, f).starts_with("# ird "));
    }
}

#[test]
fn twobody_respects_entropy_bound() {
    let d = out_dir("twobody");
    let o = ird(&d, &["twobody", "--exact", "--n", "12", "--s", "0.4", "--alpha", "1.0"]);
    assert_eq!(o.status.code(), Some(0));
    for line in read(&d, "twobody.csv").lines().skip(2) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        assert!(v[2] <= v[4] + 1e-3);
    }
}
