//! Command-line surface: convergence studies, cavity runs, parameter sweeps and
//! time-series analysis.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use chd_core::analysis::{
    classify_regime_with, classify_run, spectrum_with, Regime, TimeSeries, DEFAULT_DISCARD, DEFAULT_PEAK_RATIO,
    DEFAULT_STEADY_BAND,
};
use chd_core::ddc::{DdcConfig, RunResult, Simulation};
use chd_core::io::{self, ConfigDocument};
use chd_core::verification::{self, BurgersSolution, DtRule};
use chd_core::{Error, SchemeOrder};
use clap::{Args, Parser, Subcommand, ValueEnum};


#[derive(Debug, Parser)]
#[command(name = "chd", version, about = "Compact Hermite difference solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a convergence study against an exact solution.
    Verify(VerifyArgs),
    /// Run one double-diffusive cavity simulation.
    Ddc {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run one simulation per value of a configuration key.
    Sweep(SweepArgs),
    /// Classify the regime of a saved time series and write its spectrum.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Case {
    Cd1d,
    BurgersSine,
    BurgersSelfsimilar,
    Cd2d,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    case: Case,
    #[arg(long, default_value = "chd4")]
    scheme: String,
    /// Comma-separated resolutions.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    re: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    /// Fixed time step; the default is the squared unit-normalized spacing.
    #[arg(long)]
    dt: Option<f64>,
    /// CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    vary: String,
    /// Comma-separated values for the varied key.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<String>,
    #[arg(long, default_value = "sweep.csv")]
    out: PathBuf,
    /// Concurrent runs; defaults to the available cores.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long)]
    series: PathBuf,
    /// History column to analyze.
    #[arg(long, default_value = "nu_av")]
    column: String,
    #[arg(long, default_value_t = DEFAULT_DISCARD)]
    discard: f64,
    #[arg(long, default_value_t = DEFAULT_STEADY_BAND)]
    steady_band: f64,
    #[arg(long, default_value_t = DEFAULT_PEAK_RATIO)]
    peak_ratio: f64,
    /// Spectrum CSV path; defaults to the series path with a `.spectrum.csv` suffix.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Solver(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Solver(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Solver(m) => m,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn solver(e: impl std::fmt::Display) -> Failure {
    Failure::Solver(e.to_string())
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn dispatch(argv: &[String]) -> i32 {
    let mut out = String::new();
    let code = dispatch_to(argv, &mut out);
    print!("{out}");
    code
}

/// Like [`dispatch`] but collects standard output in `out`; diagnostics go to stderr.
pub fn dispatch_to(argv: &[String], out: &mut String) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    out.push_str(&e.to_string());
                    0
                }
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or("invalid arguments");
                    eprintln!("error: {}", first.trim_start_matches("error: "));
                    2
                }
            };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => verify(a, out),
        Command::Ddc { config } => ddc(&config, out),
        Command::Sweep(a) => sweep(a, out),
        Command::Analyze(a) => analyze(a, out),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message().replace('\n', " "));
            f.code()
        }
    }
}

fn verify(a: VerifyArgs, out: &mut String) -> Result<(), Failure> {
    let order: SchemeOrder = a.scheme.parse().map_err(usage)?;
    let rule = a.dt.map_or(DtRule::MeshSquared, DtRule::Fixed);
    let (name, report) = match a.case {
        Case::Cd1d => {
            ("cd1d", verification::run_cd1d_with(order, &a.n, a.t_end.unwrap_or(1.0), verification::LineBoundary::DirichletExact, rule))
        }
        Case::BurgersSine => (
            "burgers-sine",
            verification::run_burgers(
                order,
                BurgersSolution::SineFraction,
                a.eps.unwrap_or(0.01),
                Some(a.gamma.unwrap_or(2.0)),
                &a.n,
                a.t_end.unwrap_or(1.0),
                rule,
            ),
        ),
        Case::BurgersSelfsimilar => (
            "burgers-selfsimilar",
            verification::run_burgers(
                order,
                BurgersSolution::SelfSimilar,
                a.eps.unwrap_or(0.05),
                None,
                &a.n,
                a.t_end.unwrap_or(2.0),
                rule,
            ),
        ),
        Case::Cd2d => {
            ("cd2d", verification::run_cd2d_with(order, a.re.unwrap_or(1.0), &a.n, a.t_end.unwrap_or(0.5), rule))
        }
    };
    let report = report.map_err(|e| match e {
        Error::DimensionTooSmall { .. }
        | Error::InsufficientData(_)
        | Error::MissingKey(_)
        | Error::NonPositive(_)
        | Error::OutOfRange { .. } => usage(e),
        other => solver(other),
    })?;
    out.push_str(&io::report_table(&report));
    let path = a.out.unwrap_or_else(|| PathBuf::from(format!("{name}-{order}.csv")));
    io::write_text(&path, &io::report_csv(&report)).map_err(solver)?;
    let _ = writeln!(out, "wrote {}", path.display());
    Ok(())
}

fn load_document(path: &Path) -> Result<ConfigDocument, Failure> {
    let text = io::read_text(path).map_err(usage)?;
    ConfigDocument::parse(&text).map_err(usage)
}

fn regime_of(result: &RunResult) -> Result<Option<Regime>, chd_core::Error> {
    Ok(classify_run(result)?.map(|v| v.regime))
}

fn summary(cfg: &DdcConfig, r: &RunResult) -> String {
    let last = r.history.last().copied();
    let mut s = format!(
        "ra = {} lambda = {} grid = {}x{} scheme = {}\n",
        cfg.params.rayleigh, cfg.params.buoyancy_ratio, cfg.grid.nx, cfg.grid.ny, cfg.order
    );
    let _ = writeln!(s, "steps = {} t = {:.6} steady = {} wall = {:.1}s", r.steps, r.final_state.time, r.steady, r.wall_clock.as_secs_f64());
    if let Some(h) = last {
        let _ = writeln!(
            s,
            "nu_av = {:.6} sh_av = {:.6} u_max = {:.6} v_max = {:.6} |psi_mid| = {:.6}",
            h.nu_av, h.sh_av, h.u_max, h.v_max, h.psi_mid_abs
        );
    }
    s
}

fn ddc(config: &Path, out: &mut String) -> Result<(), Failure> {
    let cfg = load_document(config)?.to_config().map_err(usage)?;
    let result = Simulation::new(cfg.clone()).map_err(usage)?.run_with(|_| {}).map_err(solver)?;
    out.push_str(&summary(&cfg, &result));
    if let Some(dir) = &cfg.output_dir {
        let dir = Path::new(dir);
        std::fs::create_dir_all(dir).map_err(|e| solver(format!("{}: {e}", dir.display())))?;
        io::write_timeseries(&result, dir.join("timeseries.csv")).map_err(solver)?;
        io::write_snapshot(&result.final_state, dir.join("snapshot.csv")).map_err(solver)?;
        let _ = writeln!(out, "wrote {}", dir.display());
    }
    Ok(())
}

struct SweepRow {
    value: String,
    nu_av: f64,
    sh_av: f64,
    regime: Option<Regime>,
    steady: bool,
}

fn sweep(a: SweepArgs, out: &mut String) -> Result<(), Failure> {
    let base = load_document(&a.config)?;
    let mut configs = Vec::with_capacity(a.values.len());
    for v in &a.values {
        let mut doc = base.clone();
        doc.set(&a.vary, v).map_err(usage)?;
        configs.push(doc.to_config().map_err(usage)?);
    }
    let jobs = a
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
        .clamp(1, configs.len().max(1));
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<RunResult, chd_core::Error>>>> = Mutex::new((0..configs.len()).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some(cfg) = configs.get(k) else { break };
                let r = Simulation::new(cfg.clone()).and_then(|s| s.run_with(|_| {}));
                results.lock().expect("sweep result lock")[k] = Some(r);
            });
        }
    });
    let mut rows = Vec::with_capacity(configs.len());
    for (value, r) in a.values.iter().zip(results.into_inner().expect("sweep result lock")) {
        let r = r.expect("every sweep job runs").map_err(|e| solver(format!("{} = {value}: {e}", a.vary)))?;
        let last = r.history.last().copied().ok_or_else(|| solver("empty history"))?;
        let regime = regime_of(&r).map_err(|e| solver(format!("{} = {value}: {e}", a.vary)))?;
        rows.push(SweepRow { value: value.clone(), nu_av: last.nu_av, sh_av: last.sh_av, regime, steady: r.steady });
    }
    let mut csv = format!("{},nu_av,sh_av,regime,steady\n", a.vary);
    for r in &rows {
        let label = r.regime.map_or("unknown", Regime::label);
        let _ = writeln!(csv, "{},{:.16e},{:.16e},{},{}", r.value, r.nu_av, r.sh_av, label, r.steady);
        let _ = writeln!(out, "{} = {}: nu_av = {:.6} sh_av = {:.6} regime = {}", a.vary, r.value, r.nu_av, r.sh_av, label);
    }
    io::write_text(&a.out, &csv).map_err(solver)?;
    let _ = writeln!(out, "wrote {}", a.out.display());
    Ok(())
}

fn analyze(a: AnalyzeArgs, out: &mut String) -> Result<(), Failure> {
    let history = io::read_timeseries(&a.series).map_err(usage)?;
    let times = io::history_column(&history, "t").map_err(usage)?;
    let samples = io::history_column(&history, &a.column).map_err(usage)?;
    let series = TimeSeries::new(times, samples).map_err(usage)?;
    let verdict = classify_regime_with(&series, a.steady_band, a.peak_ratio, a.discard).map_err(solver)?;
    out.push_str(&io::verdict_text(&verdict));
    let spec = spectrum_with(&series, a.discard).map_err(solver)?;
    let path = a.out.unwrap_or_else(|| {
        let mut p = a.series.clone().into_os_string();
        p.push(".spectrum.csv");
        PathBuf::from(p)
    });
    io::write_text(&path, &io::spectrum_csv(&spec)).map_err(solver)?;
    let _ = writeln!(out, "wrote {}", path.display());
    Ok(())
}
