use std::path::Path;
use std::process::Command;

use chd_cli::dispatch_to;
use chd_core::analysis::TimeSeries;
use chd_core::ddc::HistorySample;
use chd_core::io;

fn run(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["chd".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = String::new();
    let code = dispatch_to(&argv, &mut out);
    (code, out)
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_chd")).args(args).output().expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn verify_cd1d_prints_two_rows_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("cd1d.csv");
    let (code, out) = run(&["verify", "cd1d", "--scheme", "chd4", "--n", "20,40", "--t-end", "1", "--out", path_str(&csv)]);
    assert_eq!(code, 0, "{out}");
    let rows: Vec<&str> = out.lines().filter(|l| l.trim_start().starts_with(char::is_numeric)).collect();
    assert_eq!(rows.len(), 2, "{out}");
    assert!(rows[1].contains("4.69"), "{out}");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("case,scheme,n,"));
}

#[test]
fn verify_other_cases_run() {
    let dir = tempfile::tempdir().unwrap();
    for (case, extra) in [
        ("burgers-sine", vec!["--eps", "0.01", "--gamma", "2", "--t-end", "0.1"]),
        ("burgers-selfsimilar", vec!["--eps", "0.05", "--t-end", "1.1"]),
        ("cd2d", vec!["--re", "10", "--t-end", "0.05"]),
    ] {
        let csv = dir.path().join(format!("{case}.csv"));
        let mut args = vec!["verify", case, "--scheme", "chd6", "--n", "12,16", "--out", path_str(&csv)];
        args.extend(extra);
        let (code, out) = run(&args);
        assert_eq!(code, 0, "{case}: {out}");
        assert!(csv.exists());
    }
}

#[test]
fn usage_errors_exit_two_with_prefix() {
    for args in [
        vec!["verify", "cd1d", "--scheme", "chd7", "--n", "20"],
        vec!["verify", "cd1d", "--n", "4"],
        vec!["ddc", "--config", "missing.cfg"],
        vec!["frobnicate"],
        vec![],
    ] {
        let o = binary(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(o.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        assert!(err.starts_with("error: "), "{args:?}: {err}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(binary(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "ra = 1e5\nlambda = 1.3\nnx = 12\nny = 24\nrayleigh = 3\n").unwrap();
    let o = binary(&["ddc", "--config", path_str(&cfg)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("rayleigh"));
}

#[test]
fn solver_failure_exits_one() {
    // A huge fixed step on a strongly driven cavity cannot be integrated.
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("blow.cfg");
    std::fs::write(&cfg, "ra = 1e7\nlambda = 0.8\nnx = 12\nny = 24\ndt = 0.5\nt_end = 5\n").unwrap();
    let o = binary(&["ddc", "--config", path_str(&cfg)]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stdout));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("error: ") && err.lines().count() == 1, "{err}");
}

#[test]
fn ddc_writes_history_and_snapshot() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let cfg = dir.path().join("run.cfg");
    std::fs::write(
        &cfg,
        format!("ra = 1e4\nlambda = 1.3\nnx = 12\nny = 24\nt_end = 0.01\noutput.every = 4\noutput.dir = {}\n", out_dir.display()),
    )
    .unwrap();
    let (code, out) = run(&["ddc", "--config", path_str(&cfg)]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("nu_av"));
    let history = io::read_timeseries(out_dir.join("timeseries.csv")).unwrap();
    assert!(history.len() >= 3);
    assert!(history.windows(2).all(|w| w[1].t > w[0].t));
    let snap = io::read_snapshot(out_dir.join("snapshot.csv")).unwrap();
    assert_eq!((snap.grid().nx, snap.grid().ny), (12, 24));
}

#[test]
fn sweep_aggregates_one_row_per_value() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("base.cfg");
    let csv = dir.path().join("sweep.csv");
    std::fs::write(&cfg, "ra = 1e4\nlambda = 1.3\nnx = 12\nny = 24\nt_end = 0.005\n").unwrap();
    let (code, out) =
        run(&["sweep", "--config", path_str(&cfg), "--vary", "ra", "--values", "1e4,1e5", "--out", path_str(&csv), "--jobs", "2"]);
    assert_eq!(code, 0, "{out}");
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "ra,nu_av,sh_av,regime,steady");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1e4,") && lines[2].starts_with("1e5,"));
    let (code, _) = run(&["sweep", "--config", path_str(&cfg), "--vary", "rayleigh", "--values", "1", "--out", path_str(&csv)]);
    assert_eq!(code, 2);
}

fn write_series(path: &Path, f: impl Fn(f64) -> f64) {
    let s = TimeSeries::sampled(2000, 1e-3, &f).unwrap();
    let history: Vec<HistorySample> = s
        .times()
        .iter()
        .map(|&t| HistorySample {
            t,
            u_mon: f(t),
            v_mon: 0.0,
            nu_av: 1.0,
            sh_av: 1.0,
            psi_max_abs: 0.0,
            psi_min_abs: 0.0,
            psi_mid_abs: 0.0,
            u_max: 0.0,
            v_max: 0.0,
        })
        .collect();
    std::fs::write(path, io::timeseries_csv(&history)).unwrap();
}

#[test]
fn analyze_reports_periodic_signal_and_writes_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let series = dir.path().join("series.csv");
    write_series(&series, |t| (2.0 * std::f64::consts::PI * 20.0 * t).sin());
    let (code, out) = run(&["analyze", "--series", path_str(&series), "--column", "u_mon"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("periodic"), "{out}");
    assert!(out.contains("period: 0.05"), "{out}");
    let spec = std::fs::read_to_string(dir.path().join("series.csv.spectrum.csv")).unwrap();
    assert!(spec.starts_with("frequency,amplitude\n"));
    let (code, out) = run(&["analyze", "--series", path_str(&series)]);
    assert_eq!(code, 0);
    assert!(out.contains("steady"), "{out}");
}
