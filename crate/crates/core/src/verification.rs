//! Convergence studies against exact solutions: 1D convection-diffusion, 1D viscous
//! Burgers (two solution families) and 2D convection-diffusion.
//!
//! Non-periodic runs impose the exact solution on boundary nodes at every RK stage
//! time. Requested steps larger than the explicit stability limit are split into the
//! smallest number of equal substeps that respects it.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use crate::compact::{BoundaryTreatment, SchemeOrder};
use crate::error::{Error, Result};
use crate::grid::{error_norms, error_norms_line, observed_order, ErrorNorms, Grid, ScalarField};
use crate::hermite::{LineKernel, Transport2d, ALPHA_FLOOR};
use crate::timestep::{rk3_step, FieldState, LineState};

/// Fraction of the RK3 real-axis stability interval used by the diffusive cap.
const DIFFUSIVE_SAFETY: f64 = 0.25;
/// Courant number used by the advective cap.
const ADVECTIVE_SAFETY: f64 = 0.5;

/// How the time step of a convergence run is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DtRule {
    /// A fixed requested step.
    Fixed(f64),
    /// `dt = (1/n)^2`: the squared mesh spacing of the domain mapped to unit length.
    MeshSquared,
}

impl DtRule {
    fn requested(self, n: usize) -> f64 {
        match self {
            DtRule::Fixed(dt) => dt,
            DtRule::MeshSquared => 1.0 / (n as f64 * n as f64),
        }
    }
}

/// Boundary handling for the 1D convection-diffusion case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineBoundary {
    /// Exact solution imposed on both end nodes; one-sided closures inside.
    DirichletExact,
    /// One period of distinct nodes with cyclic operators.
    Periodic,
}

/// Exact Burgers solutions available for testing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BurgersSolution {
    /// Decaying sine ratio on `[0, 1]` starting at `t = 0`; needs `gamma`.
    SineFraction,
    /// Self-similar profile on `[0, 1.2]` starting at `t = 1`.
    SelfSimilar,
}

impl BurgersSolution {
    pub fn name(self) -> &'static str {
        match self {
            BurgersSolution::SineFraction => "burgers-sine",
            BurgersSolution::SelfSimilar => "burgers-selfsimilar",
        }
    }

    fn domain(self) -> (f64, f64) {
        match self {
            BurgersSolution::SineFraction => (0.0, 1.0),
            BurgersSolution::SelfSimilar => (0.0, 1.2),
        }
    }

    fn start_time(self) -> f64 {
        match self {
            BurgersSolution::SineFraction => 0.0,
            BurgersSolution::SelfSimilar => 1.0,
        }
    }
}

impl std::str::FromStr for BurgersSolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sine" | "sinefraction" | "sine_fraction" => Ok(BurgersSolution::SineFraction),
            "selfsimilar" | "self_similar" | "self-similar" => Ok(BurgersSolution::SelfSimilar),
            _ => Err(Error::InvalidValue { key: "solution".into(), value: s.into() }),
        }
    }
}

/// One resolution of a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    /// Spacing-weighted two-norm.
    pub l2: f64,
    /// Root mean square over all nodes.
    pub rms: f64,
    pub linf: f64,
    pub l2_order: Option<f64>,
    pub rms_order: Option<f64>,
    pub linf_order: Option<f64>,
    pub dt_requested: f64,
    pub dt: f64,
    pub steps: usize,
    pub runtime: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub case_name: String,
    pub order: SchemeOrder,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn row(&self, n: usize) -> Option<&ConvergenceRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// Observed rms order between the two finest resolutions.
    pub fn finest_order(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.rms_order)
    }
}

struct RawRow {
    n: usize,
    h: f64,
    norms: ErrorNorms,
    dt_requested: f64,
    dt: f64,
    steps: usize,
    runtime: Duration,
}

fn assemble_report(case_name: String, order: SchemeOrder, mut raw: Vec<RawRow>) -> Result<ConvergenceReport> {
    raw.sort_by_key(|r| r.n);
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(raw.len());
    for (k, r) in raw.iter().enumerate() {
        let order_of = |pick: fn(&ErrorNorms) -> f64| -> Option<f64> {
            let prev = raw.get(k.checked_sub(1)?)?;
            observed_order(pick(&prev.norms), prev.h, pick(&r.norms), r.h).ok()
        };
        rows.push(ConvergenceRow {
            n: r.n,
            l2: r.norms.l2,
            rms: r.norms.rms,
            linf: r.norms.linf,
            l2_order: order_of(|e| e.l2),
            rms_order: order_of(|e| e.rms),
            linf_order: order_of(|e| e.linf),
            dt_requested: r.dt_requested,
            dt: r.dt,
            steps: r.steps,
            runtime: r.runtime,
        });
    }
    Ok(ConvergenceReport { case_name, order, rows })
}

fn check_resolutions(resolutions: &[usize], min: usize) -> Result<()> {
    if resolutions.is_empty() {
        return Err(Error::InsufficientData("no resolutions given".into()));
    }
    match resolutions.iter().find(|&&n| n < min) {
        Some(&n) => Err(Error::DimensionTooSmall { axis: "n", value: n, min }),
        None => Ok(()),
    }
}

/// Number of steps and step size covering `span` with a step no larger than `cap`.
///
/// The requested step is first rounded so that it divides `span`, then split into
/// the smallest number of equal substeps that respects `cap`.
pub fn step_plan(span: f64, requested: f64, cap: f64) -> Result<(usize, f64)> {
    if !(requested > 0.0 && requested.is_finite()) {
        return Err(Error::NonPositive("dt"));
    }
    if !(span >= 0.0) {
        return Err(Error::OutOfRange { name: "t_end", value: span });
    }
    if span == 0.0 {
        return Ok((0, 0.0));
    }
    let coarse = ((span / requested).round() as usize).max(1);
    let dt = span / coarse as f64;
    let split = if cap.is_finite() && dt > cap { (dt / cap).ceil() as usize } else { 1 };
    let steps = coarse * split;
    Ok((steps, span / steps as f64))
}

fn stability_cap(h: f64, nu: f64, speed: f64) -> f64 {
    let diffusive = if nu > 0.0 { DIFFUSIVE_SAFETY * h * h / nu } else { f64::INFINITY };
    let advective = if speed > 0.0 { ADVECTIVE_SAFETY * h / speed } else { f64::INFINITY };
    diffusive.min(advective)
}

#[derive(Clone, Copy)]
enum LineFlux {
    /// `F = c u` with constant speed `c`.
    Linear(f64),
    /// `F = u^2 / 2` with the split speed refreshed every step.
    Burgers,
}

struct LineProblem<'a> {
    a: f64,
    b: f64,
    t0: f64,
    nu: f64,
    flux: LineFlux,
    boundary: LineBoundary,
    exact: &'a dyn Fn(f64, f64) -> f64,
}

struct LineRun {
    x: Vec<f64>,
    h: f64,
    state: LineState,
    kernel: LineKernel,
    flux: Vec<f64>,
    scratch: Vec<f64>,
}

impl<'a> LineProblem<'a> {
    fn setup(&self, n: usize, order: SchemeOrder) -> Result<LineRun> {
        let h = (self.b - self.a) / n as f64;
        let len = match self.boundary {
            LineBoundary::DirichletExact => n + 1,
            LineBoundary::Periodic => n,
        };
        let bc = match self.boundary {
            LineBoundary::DirichletExact => BoundaryTreatment::OneSided,
            LineBoundary::Periodic => BoundaryTreatment::Periodic,
        };
        let x: Vec<f64> = (0..len).map(|i| self.a + i as f64 * h).collect();
        let values = x.iter().map(|&xi| (self.exact)(xi, self.t0)).collect();
        Ok(LineRun {
            kernel: LineKernel::new(len, h, order, bc)?,
            x,
            h,
            state: LineState { values, time: self.t0 },
            flux: vec![0.0; len],
            scratch: vec![0.0; len],
        })
    }

    fn max_speed(&self, values: &[f64]) -> f64 {
        match self.flux {
            LineFlux::Linear(c) => c.abs(),
            LineFlux::Burgers => values.iter().fold(0.0_f64, |m, v| m.max(v.abs())),
        }
    }

    fn impose(&self, x: &[f64], values: &mut [f64], t: f64) {
        if self.boundary == LineBoundary::DirichletExact {
            let last = values.len() - 1;
            values[0] = (self.exact)(x[0], t);
            values[last] = (self.exact)(x[last], t);
        }
    }

    fn step(&self, run: &mut LineRun, dt: f64) -> Result<()> {
        let alpha = self.max_speed(&run.state.values).max(ALPHA_FLOOR);
        let LineRun { x, state, kernel, flux, scratch, .. } = run;
        let next = rk3_step(state, dt, |s, _| {
            self.impose(x, &mut s.values, s.time);
            match self.flux {
                LineFlux::Linear(c) => {
                    for (f, u) in flux.iter_mut().zip(&s.values) {
                        *f = c * u;
                    }
                }
                LineFlux::Burgers => {
                    for (f, u) in flux.iter_mut().zip(&s.values) {
                        *f = 0.5 * u * u;
                    }
                }
            }
            let mut rate = vec![0.0; s.values.len()];
            kernel.add_convection(flux, &s.values, alpha, 1.0, &mut rate);
            scratch.copy_from_slice(&s.values);
            kernel.add_diffusion(scratch, self.nu, &mut rate);
            Ok(rate)
        })?;
        *state = next;
        Ok(())
    }

    /// Advances to each of `times` in turn and records the error there.
    fn run(&self, n: usize, order: SchemeOrder, rule: DtRule, times: &[f64]) -> Result<Vec<RawRow>> {
        let started = Instant::now();
        let mut run = self.setup(n, order)?;
        let speed = self.max_speed(&run.state.values);
        let cap = stability_cap(run.h, self.nu, speed);
        let requested = rule.requested(n);
        let mut out = Vec::with_capacity(times.len());
        let mut t_prev = self.t0;
        for &t_end in times {
            let (steps, dt) = step_plan(t_end - t_prev, requested, cap)?;
            for k in 0..steps {
                self.step(&mut run, dt)?;
                run.state.time = t_prev + (k + 1) as f64 * dt;
            }
            run.state.time = t_end;
            self.impose(&run.x, &mut run.state.values, t_end);
            let exact: Vec<f64> = run.x.iter().map(|&xi| (self.exact)(xi, t_end)).collect();
            let norms = error_norms_line(&run.state.values, &exact, run.h)?;
            out.push(RawRow { n, h: run.h, norms, dt_requested: requested, dt, steps, runtime: started.elapsed() });
            t_prev = t_end;
        }
        Ok(out)
    }
}

fn cd1d_exact(x: f64, t: f64) -> f64 {
    (-t).exp() * (x - t).sin()
}

/// `u_t + u_x = u_xx` on `[0, 2 pi]` against `exp(-t) sin(x - t)`, with the exact
/// solution on the end nodes and `dt = 1/n^2`.
pub fn run_cd1d(order: SchemeOrder, resolutions: &[usize], t_end: f64) -> Result<ConvergenceReport> {
    run_cd1d_with(order, resolutions, t_end, LineBoundary::DirichletExact, DtRule::MeshSquared)
}

pub fn run_cd1d_with(
    order: SchemeOrder,
    resolutions: &[usize],
    t_end: f64,
    boundary: LineBoundary,
    rule: DtRule,
) -> Result<ConvergenceReport> {
    check_resolutions(resolutions, 8)?;
    let problem = LineProblem {
        a: 0.0,
        b: 2.0 * PI,
        t0: 0.0,
        nu: 1.0,
        flux: LineFlux::Linear(1.0),
        boundary,
        exact: &cd1d_exact,
    };
    let mut raw = Vec::with_capacity(resolutions.len());
    for &n in resolutions {
        raw.extend(problem.run(n, order, rule, &[t_end])?);
    }
    assemble_report("cd1d".into(), order, raw)
}

/// Exact solution of `u_t + (u^2/2)_x = eps u_xx` for the chosen family.
pub fn burgers_exact(solution: BurgersSolution, eps: f64, gamma: f64) -> impl Fn(f64, f64) -> f64 {
    move |x, t| match solution {
        BurgersSolution::SineFraction => {
            let decay = (-PI * PI * eps * t).exp();
            2.0 * PI * eps * decay * (PI * x).sin() / (gamma + decay * (PI * x).cos())
        }
        BurgersSolution::SelfSimilar => {
            // t sqrt(t/t0) exp(x^2/(4 eps t)) with t0 = exp(1/(8 eps)), in log form.
            let log_tail = 1.5 * t.ln() - 1.0 / (16.0 * eps) + x * x / (4.0 * eps * t);
            x / (t + log_tail.exp())
        }
    }
}

fn burgers_problem_check(solution: BurgersSolution, eps: f64, gamma: Option<f64>) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::NonPositive("eps"));
    }
    match (solution, gamma) {
        (BurgersSolution::SineFraction, None) => Err(Error::MissingKey("gamma".into())),
        (BurgersSolution::SineFraction, Some(g)) if !(g > 1.0) => {
            Err(Error::OutOfRange { name: "gamma", value: g })
        }
        (_, g) => Ok(g.unwrap_or(0.0)),
    }
}

/// Viscous Burgers convergence study with Dirichlet data from the exact solution.
pub fn run_burgers(
    order: SchemeOrder,
    solution: BurgersSolution,
    eps: f64,
    gamma: Option<f64>,
    resolutions: &[usize],
    t_end: f64,
    rule: DtRule,
) -> Result<ConvergenceReport> {
    check_resolutions(resolutions, 8)?;
    let g = burgers_problem_check(solution, eps, gamma)?;
    let exact = burgers_exact(solution, eps, g);
    let (a, b) = solution.domain();
    let problem = LineProblem {
        a,
        b,
        t0: solution.start_time(),
        nu: eps,
        flux: LineFlux::Burgers,
        boundary: LineBoundary::DirichletExact,
        exact: &exact,
    };
    if t_end < problem.t0 {
        return Err(Error::OutOfRange { name: "t_end", value: t_end });
    }
    let mut raw = Vec::with_capacity(resolutions.len());
    for &n in resolutions {
        raw.extend(problem.run(n, order, rule, &[t_end])?);
    }
    assemble_report(solution.name().into(), order, raw)
}

/// Error of one Burgers run sampled at several output times.
#[derive(Debug, Clone, PartialEq)]
pub struct TimedError {
    pub t: f64,
    pub norms: ErrorNorms,
    pub dt: f64,
}

/// Runs a single Burgers resolution and reports the error at each of `times`.
pub fn burgers_error_history(
    order: SchemeOrder,
    solution: BurgersSolution,
    eps: f64,
    gamma: Option<f64>,
    n: usize,
    rule: DtRule,
    times: &[f64],
) -> Result<Vec<TimedError>> {
    check_resolutions(&[n], 8)?;
    let g = burgers_problem_check(solution, eps, gamma)?;
    let exact = burgers_exact(solution, eps, g);
    let (a, b) = solution.domain();
    let problem = LineProblem {
        a,
        b,
        t0: solution.start_time(),
        nu: eps,
        flux: LineFlux::Burgers,
        boundary: LineBoundary::DirichletExact,
        exact: &exact,
    };
    let mut prev = problem.t0;
    for &t in times {
        if !(t >= prev) {
            return Err(Error::OutOfRange { name: "time", value: t });
        }
        prev = t;
    }
    Ok(problem
        .run(n, order, rule, times)?
        .into_iter()
        .zip(times)
        .map(|(r, &t)| TimedError { t, norms: r.norms, dt: r.dt })
        .collect())
}

struct Cd2d {
    re: f64,
}

impl Cd2d {
    fn decay(&self, t: f64) -> f64 {
        (-2.0 * t / self.re).exp()
    }

    fn exact(&self, t: f64) -> impl Fn(f64, f64) -> f64 {
        let e = self.decay(t);
        move |x, y| 2.0 * e * x.cos() * y.cos()
    }

    fn velocity(&self, grid: Grid, t: f64) -> (ScalarField, ScalarField) {
        let e = self.decay(t);
        (
            ScalarField::from_fn(grid, |x, y| -e * x.cos() * y.sin()),
            ScalarField::from_fn(grid, |x, y| e * x.sin() * y.cos()),
        )
    }

    fn impose(&self, f: &mut ScalarField, t: f64) {
        let g = *f.grid();
        let exact = self.exact(t);
        for i in 0..=g.nx {
            f.set(i, 0, exact(g.x(i), g.y(0)));
            f.set(i, g.ny, exact(g.x(i), g.y(g.ny)));
        }
        for j in 0..=g.ny {
            f.set(0, j, exact(g.x(0), g.y(j)));
            f.set(g.nx, j, exact(g.x(g.nx), g.y(j)));
        }
    }

    fn run(&self, n: usize, order: SchemeOrder, rule: DtRule, t_end: f64) -> Result<RawRow> {
        let started = Instant::now();
        let grid = Grid::new(n, n, PI, PI, 0.0, 0.0)?;
        let mut transport = Transport2d::new(grid, order, BoundaryTreatment::OneSided)?;
        let mut state = FieldState { field: ScalarField::from_fn(grid, self.exact(0.0)), time: 0.0 };
        let nu = 1.0 / self.re;
        // Velocity magnitudes never exceed their initial maxima.
        let cap = stability_cap(grid.dx, 2.0 * nu, 2.0);
        let requested = rule.requested(n);
        let (steps, dt) = step_plan(t_end, requested, cap)?;
        for k in 0..steps {
            state = rk3_step(&state, dt, |s, _| {
                self.impose(&mut s.field, s.time);
                let (p, q) = self.velocity(grid, s.time);
                let ax = p.max_abs().max(ALPHA_FLOOR);
                let ay = q.max_abs().max(ALPHA_FLOOR);
                let mut rate = ScalarField::zeros(grid);
                transport.add_convection(&s.field, &p, &q, ax, ay, &mut rate)?;
                transport.add_diffusion(&s.field, nu, &mut rate)?;
                Ok(rate)
            })?;
            state.time = (k + 1) as f64 * dt;
        }
        self.impose(&mut state.field, t_end);
        let norms = error_norms(&state.field, &ScalarField::from_fn(grid, self.exact(t_end)))?;
        Ok(RawRow { n, h: grid.dx, norms, dt_requested: requested, dt, steps, runtime: started.elapsed() })
    }
}

/// `u_t + (p u)_x + (q u)_y = (u_xx + u_yy)/Re` on `[0, pi]^2` against
/// `2 exp(-2t/Re) cos x cos y`, with `n x n` intervals and `dt = 1/n^2`.
pub fn run_cd2d(order: SchemeOrder, reynolds: f64, resolutions: &[usize], t_end: f64) -> Result<ConvergenceReport> {
    run_cd2d_with(order, reynolds, resolutions, t_end, DtRule::MeshSquared)
}

pub fn run_cd2d_with(
    order: SchemeOrder,
    reynolds: f64,
    resolutions: &[usize],
    t_end: f64,
    rule: DtRule,
) -> Result<ConvergenceReport> {
    check_resolutions(resolutions, 10)?;
    if !(reynolds > 0.0) {
        return Err(Error::NonPositive("reynolds"));
    }
    if !(t_end >= 0.0) {
        return Err(Error::OutOfRange { name: "t_end", value: t_end });
    }
    let case = Cd2d { re: reynolds };
    let raw = resolutions.iter().map(|&n| case.run(n, order, rule, t_end)).collect::<Result<Vec<_>>>()?;
    assemble_report("cd2d".into(), order, raw)
}
