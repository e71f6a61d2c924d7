//! Run configuration files and CSV output.
//!
//! Configuration files hold `key = value` lines; `#` starts a comment. Unknown keys
//! are rejected. CSV writers print every float with 17 significant digits, so a
//! write followed by a read reproduces values bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::analysis::{RegimeVerdict, Spectrum};
use crate::compact::SchemeOrder;
use crate::ddc::{DdcConfig, HistorySample, RunResult};
use crate::error::{Error, Result};
use crate::grid::{ConservedState, Grid, PhysicalParams, ScalarField};
use crate::poisson::PoissonStrategy;
use crate::verification::ConvergenceReport;

pub const SNAPSHOT_HEADER: &str = "x,y,psi,omega,T,C,u,v";
pub const TIMESERIES_HEADER: &str = "t,u_mon,v_mon,nu_av,sh_av,psi_max_abs,psi_min_abs,psi_mid_abs,u_max,v_max";

/// Every key accepted in a configuration file, in serialization order.
pub const CONFIG_KEYS: [&str; 20] = [
    "pr",
    "le",
    "ra",
    "lambda",
    "aspect",
    "nx",
    "ny",
    "scheme",
    "cfl",
    "dt",
    "t_end",
    "inner_tol",
    "steady_tol",
    "poisson.relax",
    "poisson.tol",
    "poisson.strategy",
    "monitor.x",
    "monitor.y",
    "output.dir",
    "output.every",
];

/// Keys without a default.
pub const REQUIRED_KEYS: [&str; 4] = ["ra", "lambda", "nx", "ny"];

/// Raw `key = value` pairs with the line each came from.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigDocument {
    entries: BTreeMap<String, (usize, String)>,
}

impl ConfigDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::Parse { line, msg: format!("expected `key = value`, got `{content}`") })?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() {
                return Err(Error::Parse { line, msg: "empty key".into() });
            }
            if value.is_empty() {
                return Err(Error::Parse { line, msg: format!("empty value for `{key}`") });
            }
            if !CONFIG_KEYS.contains(&key) {
                return Err(Error::UnknownKey { line, key: key.into() });
            }
            if let Some((first, _)) = entries.get(key) {
                return Err(Error::Parse { line, msg: format!("`{key}` already set on line {first}") });
            }
            entries.insert(key.to_string(), (line, value.to_string()));
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }

    /// Sets or replaces a value; the key must be recognized.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if !CONFIG_KEYS.contains(&key) {
            return Err(Error::UnknownKey { line: 0, key: key.into() });
        }
        self.entries.insert(key.to_string(), (0, value.to_string()));
        Ok(())
    }

    fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((_, v)) => v
                .parse::<T>()
                .map(Some)
                .map_err(|_| Error::InvalidValue { key: key.into(), value: v.clone() }),
        }
    }

    fn required<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.parsed(key)?.ok_or_else(|| Error::MissingKey(key.into()))
    }

    /// Builds and validates the run configuration, filling documented defaults.
    pub fn to_config(&self) -> Result<DdcConfig> {
        let float = |key: &str, default: f64| -> Result<f64> { Ok(self.parsed(key)?.unwrap_or(default)) };
        let params = PhysicalParams::new(
            float("pr", 1.0)?,
            float("le", 2.0)?,
            self.required("ra")?,
            self.required("lambda")?,
            float("aspect", 2.0)?,
        )?;
        let order: SchemeOrder = match self.get("scheme") {
            None => SchemeOrder::Chd4,
            Some(v) => v.parse().map_err(|_| Error::InvalidValue { key: "scheme".into(), value: v.into() })?,
        };
        let mut cfg = DdcConfig::new(params, self.required("nx")?, self.required("ny")?, order)?;
        cfg.cfl = float("cfl", cfg.cfl)?;
        cfg.dt_override = self.parsed("dt")?;
        cfg.t_end = float("t_end", cfg.t_end)?;
        cfg.inner_tolerance = float("inner_tol", cfg.inner_tolerance)?;
        cfg.steady_tolerance = float("steady_tol", cfg.steady_tolerance)?;
        cfg.poisson.relaxation = float("poisson.relax", cfg.poisson.relaxation)?;
        cfg.poisson.tolerance = float("poisson.tol", cfg.poisson.tolerance)?;
        if let Some(v) = self.get("poisson.strategy") {
            cfg.poisson.strategy = v.parse::<PoissonStrategy>()?;
        }
        cfg.monitor = (float("monitor.x", cfg.monitor.0)?, float("monitor.y", cfg.monitor.1)?);
        cfg.output_dir = self.get("output.dir").map(str::to_string);
        cfg.history_every = self.parsed("output.every")?.unwrap_or(cfg.history_every);
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Parses a configuration file into a validated run configuration.
pub fn parse_config(text: &[u8]) -> Result<DdcConfig> {
    let text = std::str::from_utf8(text).map_err(|e| Error::Parse { line: 0, msg: format!("not UTF-8: {e}") })?;
    ConfigDocument::parse(text)?.to_config()
}

/// Writes a configuration in the file format; [`parse_config`] reads it back unchanged.
pub fn serialize_config(cfg: &DdcConfig) -> String {
    let p = &cfg.params;
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k} = {v}");
    };
    line("pr", p.prandtl.to_string());
    line("le", p.lewis.to_string());
    line("ra", p.rayleigh.to_string());
    line("lambda", p.buoyancy_ratio.to_string());
    line("aspect", p.aspect.to_string());
    line("nx", cfg.grid.nx.to_string());
    line("ny", cfg.grid.ny.to_string());
    line("scheme", cfg.order.to_string());
    line("cfl", cfg.cfl.to_string());
    if let Some(dt) = cfg.dt_override {
        line("dt", dt.to_string());
    }
    line("t_end", cfg.t_end.to_string());
    line("inner_tol", cfg.inner_tolerance.to_string());
    line("steady_tol", cfg.steady_tolerance.to_string());
    line("poisson.relax", cfg.poisson.relaxation.to_string());
    line("poisson.tol", cfg.poisson.tolerance.to_string());
    line("poisson.strategy", cfg.poisson.strategy.to_string());
    line("monitor.x", cfg.monitor.0.to_string());
    line("monitor.y", cfg.monitor.1.to_string());
    if let Some(dir) = &cfg.output_dir {
        line("output.dir", dir.clone());
    }
    line("output.every", cfg.history_every.to_string());
    out
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io { path: path.display().to_string(), msg: e.to_string() }
}

/// Writes `contents` to `path`, replacing any existing file.
pub fn write_text(path: impl AsRef<Path>, contents: &str) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, contents).map_err(|e| io_error(path, e))
}

pub fn read_text(path: impl AsRef<Path>) -> Result<String> {
    let path = path.as_ref();
    std::fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn push_row(out: &mut String, values: &[f64]) {
    for (k, v) in values.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        let _ = write!(out, "{v:.16e}");
    }
    out.push('\n');
}

/// Parses CSV text with the given header into rows of floats.
fn parse_rows(text: &str, header: &str) -> Result<Vec<Vec<f64>>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == header => {}
        Some((_, h)) => return Err(Error::Parse { line: 1, msg: format!("expected header `{header}`, got `{h}`") }),
        None => return Err(Error::Parse { line: 1, msg: "empty file".into() }),
    }
    let width = header.split(',').count();
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|c| c.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<f64>, _>>()
            .map_err(|e| Error::Parse { line: idx + 1, msg: e.to_string() })?;
        if row.len() != width {
            return Err(Error::Parse { line: idx + 1, msg: format!("expected {width} columns, got {}", row.len()) });
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn snapshot_csv(state: &ConservedState) -> String {
    let g = state.grid();
    let mut out = String::with_capacity(200 * g.len() + 32);
    out.push_str(SNAPSHOT_HEADER);
    out.push('\n');
    for j in 0..=g.ny {
        for i in 0..=g.nx {
            push_row(
                &mut out,
                &[
                    g.x(i),
                    g.y(j),
                    state.psi.get(i, j),
                    state.omega.get(i, j),
                    state.temperature.get(i, j),
                    state.concentration.get(i, j),
                    state.u.get(i, j),
                    state.v.get(i, j),
                ],
            );
        }
    }
    out
}

/// Writes all nodal fields as CSV, one row per node with `i` varying fastest.
pub fn write_snapshot(state: &ConservedState, path: impl AsRef<Path>) -> Result<()> {
    write_text(path, &snapshot_csv(state))
}

/// Reads a snapshot back; the time is not stored and is returned as zero.
pub fn read_snapshot(path: impl AsRef<Path>) -> Result<ConservedState> {
    let rows = parse_rows(&read_text(path)?, SNAPSHOT_HEADER)?;
    let first = rows.first().ok_or_else(|| Error::InsufficientData("snapshot has no rows".into()))?;
    let (x0, y0) = (first[0], first[1]);
    let nx = rows.iter().take_while(|r| r[1] == y0).count().saturating_sub(1);
    if nx == 0 || rows.len() % (nx + 1) != 0 {
        return Err(Error::Dimension(format!("{} rows do not form a grid", rows.len())));
    }
    let ny = rows.len() / (nx + 1) - 1;
    let last = &rows[rows.len() - 1];
    let grid = Grid::new(nx, ny, last[0] - x0, last[1] - y0, x0, y0)?;
    let column = |c: usize| ScalarField::from_values(grid, rows.iter().map(|r| r[c]).collect());
    Ok(ConservedState {
        psi: column(2)?,
        omega: column(3)?,
        temperature: column(4)?,
        concentration: column(5)?,
        u: column(6)?,
        v: column(7)?,
        time: 0.0,
    })
}

pub fn timeseries_csv(history: &[HistorySample]) -> String {
    let mut out = String::with_capacity(240 * history.len() + 96);
    out.push_str(TIMESERIES_HEADER);
    out.push('\n');
    for h in history {
        push_row(
            &mut out,
            &[h.t, h.u_mon, h.v_mon, h.nu_av, h.sh_av, h.psi_max_abs, h.psi_min_abs, h.psi_mid_abs, h.u_max, h.v_max],
        );
    }
    out
}

/// Writes the run history as CSV.
pub fn write_timeseries(result: &RunResult, path: impl AsRef<Path>) -> Result<()> {
    write_text(path, &timeseries_csv(&result.history))
}

pub fn read_timeseries(path: impl AsRef<Path>) -> Result<Vec<HistorySample>> {
    let rows = parse_rows(&read_text(path)?, TIMESERIES_HEADER)?;
    Ok(rows
        .into_iter()
        .map(|r| HistorySample {
            t: r[0],
            u_mon: r[1],
            v_mon: r[2],
            nu_av: r[3],
            sh_av: r[4],
            psi_max_abs: r[5],
            psi_min_abs: r[6],
            psi_mid_abs: r[7],
            u_max: r[8],
            v_max: r[9],
        })
        .collect())
}

/// Named column of a history, as used by the time-series CSV header.
pub fn history_column(history: &[HistorySample], name: &str) -> Result<Vec<f64>> {
    let pick: fn(&HistorySample) -> f64 = match name {
        "t" => |h| h.t,
        "u_mon" => |h| h.u_mon,
        "v_mon" => |h| h.v_mon,
        "nu_av" => |h| h.nu_av,
        "sh_av" => |h| h.sh_av,
        "psi_max_abs" => |h| h.psi_max_abs,
        "psi_min_abs" => |h| h.psi_min_abs,
        "psi_mid_abs" => |h| h.psi_mid_abs,
        "u_max" => |h| h.u_max,
        "v_max" => |h| h.v_max,
        _ => return Err(Error::InvalidValue { key: "column".into(), value: name.into() }),
    };
    Ok(history.iter().map(pick).collect())
}

fn fmt_order(o: Option<f64>) -> String {
    o.map(|v| format!("{v:.2}")).unwrap_or_else(|| "-".into())
}

/// Aligned text table of a convergence study.
pub fn report_table(report: &ConvergenceReport) -> String {
    let mut out = format!("{} ({})\n", report.case_name, report.order);
    let _ = writeln!(
        out,
        "{:>6}  {:>11}  {:>6}  {:>11}  {:>6}  {:>11}  {:>10}  {:>8}",
        "n", "rms", "rate", "linf", "rate", "l2", "dt", "time[s]"
    );
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{:>6}  {:>11.4e}  {:>6}  {:>11.4e}  {:>6}  {:>11.4e}  {:>10.3e}  {:>8.3}",
            r.n,
            r.rms,
            fmt_order(r.rms_order),
            r.linf,
            fmt_order(r.linf_order),
            r.l2,
            r.dt,
            r.runtime.as_secs_f64()
        );
    }
    out
}

pub fn report_csv(report: &ConvergenceReport) -> String {
    let mut out = String::from("case,scheme,n,l2,rms,linf,l2_order,rms_order,linf_order,dt,steps,runtime_s\n");
    let opt = |o: Option<f64>| o.map(|v| format!("{v:.16e}")).unwrap_or_default();
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{:.16e},{:.16e},{:.16e},{},{},{},{:.16e},{},{:.6}",
            report.case_name,
            report.order,
            r.n,
            r.l2,
            r.rms,
            r.linf,
            opt(r.l2_order),
            opt(r.rms_order),
            opt(r.linf_order),
            r.dt,
            r.steps,
            r.runtime.as_secs_f64()
        );
    }
    out
}

pub fn spectrum_csv(spec: &Spectrum) -> String {
    let mut out = String::from("frequency,amplitude\n");
    for (f, a) in spec.frequencies.iter().zip(&spec.amplitudes) {
        push_row(&mut out, &[*f, *a]);
    }
    out
}

pub fn verdict_text(v: &RegimeVerdict) -> String {
    let mut out = format!("regime: {} ({})\n", v.regime, v.regime.label());
    if let (Some(f), Some(p)) = (v.fundamental_frequency, v.period) {
        let _ = writeln!(out, "fundamental frequency: {f:.6}\nperiod: {p:.6}");
    }
    let _ = writeln!(out, "peak to floor ratio: {:.3e}\nharmonic power share: {:.4}", v.peak_to_floor_ratio, v.harmonic_share);
    out
}
