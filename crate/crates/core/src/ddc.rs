//! Double-diffusive convection in a rectangular cavity heated and salted from the left wall.
//!
//! Each time level iterates a full RK3 step from the previous level with the velocity
//! frozen at the latest iterate, re-solving the stream function after every pass, until
//! the relative change of the evolved fields drops below the inner tolerance.

use std::time::{Duration, Instant};

use crate::compact::{recover_velocity_with, Axis, BoundaryTreatment, CcdOperator, FieldDerivative, SchemeOrder};
use crate::error::{Error, Result};
use crate::grid::{ConservedState, Grid, PhysicalParams, ScalarField};
use crate::poisson::{PoissonSettings, PoissonSolver};
use crate::timestep::{choose_dt, rk3_step, RhsAssembler, RhsEvaluation};

/// Wall value of temperature and concentration on the left wall; the right wall holds the negative.
pub const WALL_VALUE: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct DdcConfig {
    pub params: PhysicalParams,
    pub grid: Grid,
    pub order: SchemeOrder,
    pub inner_tolerance: f64,
    pub inner_cap: usize,
    /// Dynamic relaxation of the stream-function iterate between inner passes.
    pub inner_acceleration: bool,
    pub steady_tolerance: f64,
    pub cfl: f64,
    pub dt_override: Option<f64>,
    pub t_end: f64,
    pub monitor: (f64, f64),
    pub poisson: PoissonSettings,
    /// History sampling cadence in steps.
    pub history_every: usize,
    pub output_dir: Option<String>,
}

impl DdcConfig {
    /// Defaults for everything except the physics and the grid resolution.
    pub fn new(params: PhysicalParams, nx: usize, ny: usize, order: SchemeOrder) -> Result<Self> {
        let grid = Grid::cavity(nx, ny, params.aspect)?;
        Ok(Self {
            params,
            grid,
            order,
            inner_tolerance: 1e-8,
            inner_cap: 50,
            inner_acceleration: true,
            steady_tolerance: 1e-10,
            cfl: 0.4,
            dt_override: None,
            t_end: 1.0,
            monitor: (0.5, 0.5 * params.aspect),
            poisson: PoissonSettings::default(),
            history_every: 10,
            output_dir: None,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &'static str, v: f64| if v > 0.0 && v.is_finite() { Ok(()) } else { Err(Error::NonPositive(name)) };
        positive("inner_tol", self.inner_tolerance)?;
        positive("steady_tol", self.steady_tolerance)?;
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::OutOfRange { name: "cfl", value: self.cfl });
        }
        if let Some(dt) = self.dt_override {
            positive("dt", dt)?;
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::OutOfRange { name: "t_end", value: self.t_end });
        }
        if self.inner_cap == 0 {
            return Err(Error::NonPositive("inner_cap"));
        }
        if self.history_every == 0 {
            return Err(Error::NonPositive("output.every"));
        }
        let g = &self.grid;
        if (g.width - 1.0).abs() > 1e-12 || (g.height - self.params.aspect).abs() > 1e-12 * self.params.aspect {
            return Err(Error::Dimension("cavity grid must span [0, 1] x [0, aspect]".into()));
        }
        let (mx, my) = self.monitor;
        if !(0.0..=1.0).contains(&mx) {
            return Err(Error::OutOfRange { name: "monitor.x", value: mx });
        }
        if !(0.0..=g.height).contains(&my) {
            return Err(Error::OutOfRange { name: "monitor.y", value: my });
        }
        self.poisson.validate()
    }

    /// Monitor point snapped to the nearest node.
    pub fn monitor_node(&self) -> (usize, usize) {
        self.grid.nearest_node(self.monitor.0, self.monitor.1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scalar {
    Temperature,
    Concentration,
}

/// One row of the run history.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistorySample {
    pub t: f64,
    pub u_mon: f64,
    pub v_mon: f64,
    pub nu_av: f64,
    pub sh_av: f64,
    /// `|max psi|`.
    pub psi_max_abs: f64,
    /// `|min psi|`.
    pub psi_min_abs: f64,
    pub psi_mid_abs: f64,
    /// Largest `|u|` on the vertical centreline.
    pub u_max: f64,
    /// Largest `|v|` on the horizontal centreline.
    pub v_max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub final_state: ConservedState,
    pub steady: bool,
    pub history: Vec<HistorySample>,
    pub wall_clock: Duration,
    pub steps: usize,
}

/// Outcome of one accepted time level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepReport {
    pub dt: f64,
    pub inner_iterations: usize,
    pub inner_error: f64,
    /// Largest pointwise velocity change over the step.
    pub delta_e: f64,
    /// Largest pointwise change of temperature or concentration over the step.
    pub delta_scalar: f64,
}

/// Rest state with the wall values applied.
pub fn initialize(config: &DdcConfig) -> ConservedState {
    let mut s = ConservedState::zeros(config.grid);
    // The grid always satisfies the minimum sizes of the wall formulas.
    let _ = apply_scalar_wall_bc(&mut s.temperature, Scalar::Temperature);
    let _ = apply_scalar_wall_bc(&mut s.concentration, Scalar::Concentration);
    let _ = apply_vorticity_bc(&mut s.omega, &s.psi);
    s
}

/// Dirichlet values on the vertical walls and a fourth-order zero-flux closure on the
/// horizontal walls. Corners take the vertical-wall value.
pub fn apply_scalar_wall_bc(field: &mut ScalarField, _which: Scalar) -> Result<()> {
    let g = *field.grid();
    if g.ny + 1 < 5 {
        return Err(Error::DimensionTooSmall { axis: "ny", value: g.ny, min: 4 });
    }
    let s = g.nx + 1;
    let v = field.values_mut();
    for i in 1..g.nx {
        v[i] = (48.0 * v[s + i] - 36.0 * v[2 * s + i] + 16.0 * v[3 * s + i] - 3.0 * v[4 * s + i]) / 25.0;
        let t = g.ny * s + i;
        v[t] = (48.0 * v[t - s] - 36.0 * v[t - 2 * s] + 16.0 * v[t - 3 * s] - 3.0 * v[t - 4 * s]) / 25.0;
    }
    for j in 0..=g.ny {
        v[j * s] = WALL_VALUE;
        v[j * s + g.nx] = -WALL_VALUE;
    }
    Ok(())
}

#[inline]
fn wall_vorticity(inv_h2: f64, psi: [f64; 3], w1: f64, w2: f64) -> f64 {
    (1.5 * inv_h2 * (15.0 * psi[0] - 16.0 * psi[1] + psi[2]) - 4.0 * w1 + w2) / 6.0
}

/// Wall vorticity from the compact no-slip closure; corners are set to zero.
pub fn apply_vorticity_bc(omega: &mut ScalarField, psi: &ScalarField) -> Result<()> {
    omega.same_grid(psi)?;
    let g = *omega.grid();
    if g.nx < 2 || g.ny < 2 {
        return Err(Error::Dimension("vorticity closure needs three nodes along each wall normal".into()));
    }
    let s = g.nx + 1;
    let p = psi.values();
    let w = omega.values_mut();
    let (ix, iy) = (1.0 / (g.dx * g.dx), 1.0 / (g.dy * g.dy));
    for j in 1..g.ny {
        let k = j * s;
        w[k] = wall_vorticity(ix, [p[k], p[k + 1], p[k + 2]], w[k + 1], w[k + 2]);
        let k = j * s + g.nx;
        w[k] = wall_vorticity(ix, [p[k], p[k - 1], p[k - 2]], w[k - 1], w[k - 2]);
    }
    for i in 1..g.nx {
        w[i] = wall_vorticity(iy, [p[i], p[i + s], p[i + 2 * s]], w[i + s], w[i + 2 * s]);
        let k = g.ny * s + i;
        w[k] = wall_vorticity(iy, [p[k], p[k - s], p[k - 2 * s]], w[k - s], w[k - 2 * s]);
    }
    for k in [0, g.nx, g.ny * s, g.ny * s + g.nx] {
        w[k] = 0.0;
    }
    Ok(())
}

/// Writes `Pr Ra (T_x - lambda C_x)` into `tx`, using `cx` as scratch.
pub(crate) fn buoyancy_source_with(
    ops: &FieldDerivative,
    temperature: &ScalarField,
    concentration: &ScalarField,
    params: &PhysicalParams,
    tx: &mut ScalarField,
    cx: &mut ScalarField,
) -> Result<()> {
    ops.apply(temperature, Axis::X, tx)?;
    ops.apply(concentration, Axis::X, cx)?;
    let k = params.prandtl * params.rayleigh;
    let lambda = params.buoyancy_ratio;
    for (t, c) in tx.values_mut().iter_mut().zip(cx.values()) {
        *t = k * (*t - lambda * c);
    }
    Ok(())
}

/// Buoyancy source of the vorticity equation at every node.
pub fn source_term(
    temperature: &ScalarField,
    concentration: &ScalarField,
    params: &PhysicalParams,
    order: SchemeOrder,
) -> Result<ScalarField> {
    temperature.same_grid(concentration)?;
    let g = *temperature.grid();
    let ops = FieldDerivative::new(g, order, BoundaryTreatment::OneSided)?;
    let mut tx = ScalarField::zeros(g);
    let mut cx = ScalarField::zeros(g);
    buoyancy_source_with(&ops, temperature, concentration, params, &mut tx, &mut cx)?;
    Ok(tx)
}

/// Composite Simpson rule on uniform samples, with a trapezoid on a trailing odd interval.
pub fn simpson(samples: &[f64], h: f64) -> f64 {
    let n = samples.len();
    if n < 2 {
        return 0.0;
    }
    let intervals = n - 1;
    let even = intervals - intervals % 2;
    let mut sum = 0.0;
    for k in (0..even).step_by(2) {
        sum += samples[k] + 4.0 * samples[k + 1] + samples[k + 2];
    }
    let mut total = sum * h / 3.0;
    if even < intervals {
        total += 0.5 * h * (samples[n - 2] + samples[n - 1]);
    }
    total
}

fn wall_flux(op: &CcdOperator, field: &ScalarField, row: &mut [f64], d: &mut [f64], prof: &mut [f64]) {
    let g = *field.grid();
    for (j, p) in prof.iter_mut().enumerate().take(g.ny + 1) {
        row.copy_from_slice(field.row(j));
        op.apply(row, d);
        *p = d[0];
    }
}

/// Average Nusselt and Sherwood numbers on the heated wall, signed so that pure
/// conduction gives one.
pub fn nusselt_sherwood(state: &ConservedState, order: SchemeOrder) -> Result<(f64, f64)> {
    let g = *state.grid();
    let op = CcdOperator::new(g.nx + 1, g.dx, order, BoundaryTreatment::OneSided)?;
    let mut row = vec![0.0; g.nx + 1];
    let mut d = vec![0.0; g.nx + 1];
    let mut prof = vec![0.0; g.ny + 1];
    wall_flux(&op, &state.temperature, &mut row, &mut d, &mut prof);
    let nu = -simpson(&prof, g.dy) / g.height;
    wall_flux(&op, &state.concentration, &mut row, &mut d, &mut prof);
    let sh = -simpson(&prof, g.dy) / g.height;
    Ok((nu, sh))
}

/// Largest relative change between iterates, with an absolute fallback near zero.
fn relative_change(new: &ScalarField, old: &ScalarField) -> f64 {
    let floor = (1e-6 * new.max_abs()).max(1e-12);
    new.values()
        .iter()
        .zip(old.values())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs() / a.abs().max(floor)))
}

fn max_diff(a: &ScalarField, b: &ScalarField) -> f64 {
    a.values().iter().zip(b.values()).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

/// A running cavity simulation.
#[derive(Debug, Clone)]
pub struct Simulation {
    config: DdcConfig,
    state: ConservedState,
    assembler: RhsAssembler,
    poisson: PoissonSolver,
    velocity: FieldDerivative,
    monitor: (usize, usize),
    centre: (usize, usize),
    steps: usize,
    theta: f64,
    previous_psi: Option<ScalarField>,
    previous_dt: f64,
}

impl Simulation {
    pub fn new(config: DdcConfig) -> Result<Self> {
        let state = initialize(&config);
        Self::from_state(config, state)
    }

    pub fn from_state(config: DdcConfig, state: ConservedState) -> Result<Self> {
        config.validate()?;
        if *state.grid() != config.grid {
            return Err(Error::GridMismatch);
        }
        let g = config.grid;
        Ok(Self {
            assembler: RhsAssembler::new(g, config.order)?,
            poisson: PoissonSolver::new(&g, config.poisson)?,
            velocity: FieldDerivative::new(g, config.order, BoundaryTreatment::OneSided)?,
            monitor: config.monitor_node(),
            centre: g.nearest_node(0.5, 0.5 * g.height),
            state,
            config,
            steps: 0,
            theta: 1.0,
            previous_psi: None,
            previous_dt: 1.0,
        })
    }

    pub fn state(&self) -> &ConservedState {
        &self.state
    }

    pub fn config(&self) -> &DdcConfig {
        &self.config
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn sample(&self) -> Result<HistorySample> {
        let s = &self.state;
        let (nu_av, sh_av) = nusselt_sherwood(s, self.config.order)?;
        let (mi, mj) = self.monitor;
        let (ci, cj) = self.centre;
        Ok(HistorySample {
            t: s.time,
            u_mon: s.u.get(mi, mj),
            v_mon: s.v.get(mi, mj),
            nu_av,
            sh_av,
            psi_max_abs: s.psi.max().abs(),
            psi_min_abs: s.psi.min().abs(),
            psi_mid_abs: s.psi.get(ci, cj).abs(),
            u_max: s.u.column(ci).iter().fold(0.0, |m: f64, v| m.max(v.abs())),
            v_max: s.v.row(cj).iter().fold(0.0, |m: f64, v| m.max(v.abs())),
        })
    }

    /// One RK3 pass from `base` with velocity frozen at `iterate`, followed by the
    /// stream-function solve and velocity recovery.
    pub fn inner_iteration(&mut self, base: &ConservedState, iterate: &ConservedState, dt: f64) -> Result<ConservedState> {
        let mut start = base.clone();
        start.psi.clone_from(&iterate.psi);
        start.u.clone_from(&iterate.u);
        start.v.clone_from(&iterate.v);
        let params = self.config.params;
        let assembler = &mut self.assembler;
        let g = self.config.grid;
        let mut next = rk3_step(&start, dt, |s, _| {
            refresh_walls(s)?;
            let mut r = RhsEvaluation::zeros(g);
            assembler.assemble(s, &params, &mut r)?;
            Ok(r)
        })?;
        apply_scalar_wall_bc(&mut next.temperature, Scalar::Temperature)?;
        apply_scalar_wall_bc(&mut next.concentration, Scalar::Concentration)?;
        let out = self.poisson.solve(&mut next.psi, &next.omega)?;
        if !out.converged {
            return Err(Error::PoissonNotConverged { iterations: out.iterations, residual: out.residual });
        }
        recover_velocity_with(&self.velocity, &next.psi, &mut next.u, &mut next.v)?;
        apply_vorticity_bc(&mut next.omega, &next.psi)?;
        Ok(next)
    }

    /// Advances one time level by `dt`.
    pub fn step(&mut self, dt: f64) -> Result<StepReport> {
        let base = self.state.clone();
        let mut iterate = base.clone();
        if self.config.inner_acceleration {
            if let Some(prev) = &self.previous_psi {
                // Linear predictor for the frozen stream function.
                let r = dt / self.previous_dt;
                for ((p, a), b) in iterate.psi.values_mut().iter_mut().zip(base.psi.values()).zip(prev.values()) {
                    *p = a + r * (a - b);
                }
                recover_velocity_with(&self.velocity, &iterate.psi, &mut iterate.u, &mut iterate.v)?;
            }
        }
        let mut err = f64::INFINITY;
        let mut k = 0;
        let mut theta = self.theta;
        let mut last_residual: Option<Vec<f64>> = None;
        while k < self.config.inner_cap {
            let mut next = self.inner_iteration(&base, &iterate, dt)?;
            k += 1;
            if !state_is_finite(&next) {
                return Err(blow_up(&next));
            }
            err = relative_change(&next.omega, &iterate.omega)
                .max(relative_change(&next.temperature, &iterate.temperature))
                .max(relative_change(&next.concentration, &iterate.concentration));
            if err < self.config.inner_tolerance {
                iterate = next;
                break;
            }
            if self.config.inner_acceleration {
                let residual: Vec<f64> =
                    next.psi.values().iter().zip(iterate.psi.values()).map(|(a, b)| a - b).collect();
                if let Some(prev) = &last_residual {
                    theta = aitken_factor(theta, prev, &residual);
                }
                if theta != 1.0 {
                    for (p, r) in next.psi.values_mut().iter_mut().zip(&residual) {
                        *p -= (1.0 - theta) * r;
                    }
                    recover_velocity_with(&self.velocity, &next.psi, &mut next.u, &mut next.v)?;
                    apply_vorticity_bc(&mut next.omega, &next.psi)?;
                }
                last_residual = Some(residual);
            }
            iterate = next;
        }
        if err >= self.config.inner_tolerance {
            return Err(Error::InnerNotConverged { iterations: k, time: iterate.time, err });
        }
        self.theta = theta;
        self.previous_dt = dt;
        self.previous_psi = Some(base.psi.clone());
        let mut delta_e: f64 = 0.0;
        for (idx, (u1, u0)) in iterate.u.values().iter().zip(base.u.values()).enumerate() {
            let dv = iterate.v.values()[idx] - base.v.values()[idx];
            delta_e = delta_e.max(((u1 - u0).powi(2) + dv * dv).sqrt());
        }
        let delta_scalar = max_diff(&iterate.temperature, &base.temperature)
            .max(max_diff(&iterate.concentration, &base.concentration));
        self.state = iterate;
        self.steps += 1;
        Ok(StepReport { dt, inner_iterations: k, inner_error: err, delta_e, delta_scalar })
    }

    /// Time step for the current state, clipped to `t_end`.
    pub fn next_dt(&self) -> Result<f64> {
        let dt = choose_dt(&self.state, &self.config.params, self.config.cfl, self.config.dt_override)?;
        let remaining = self.config.t_end - self.state.time;
        Ok(if remaining < dt { remaining } else { dt })
    }

    /// Runs to `t_end` or a steady state, calling `observe` on each history sample.
    pub fn run_with(mut self, mut observe: impl FnMut(&HistorySample)) -> Result<RunResult> {
        let clock = Instant::now();
        let mut history = vec![self.sample()?];
        observe(&history[0]);
        let mut steady = false;
        let end = self.config.t_end;
        while self.state.time < end - 1e-12 * end.max(1.0) {
            let dt = self.next_dt()?;
            let rep = self.step(dt)?;
            steady = rep.delta_e.max(rep.delta_scalar) <= self.config.steady_tolerance;
            if steady || self.steps % self.config.history_every == 0 {
                let s = self.sample()?;
                observe(&s);
                history.push(s);
            }
            if steady {
                break;
            }
        }
        if history.last().map(|h| h.t) != Some(self.state.time) {
            let s = self.sample()?;
            observe(&s);
            history.push(s);
        }
        Ok(RunResult { final_state: self.state, steady, history, wall_clock: clock.elapsed(), steps: self.steps })
    }
}

/// Dynamic relaxation factor from two successive fixed-point residuals.
fn aitken_factor(theta: f64, prev: &[f64], cur: &[f64]) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for (p, c) in prev.iter().zip(cur) {
        let d = c - p;
        num += p * d;
        den += d * d;
    }
    if den == 0.0 {
        return theta;
    }
    (-theta * num / den).clamp(0.05, 1.5)
}

fn refresh_walls(s: &mut ConservedState) -> Result<()> {
    apply_scalar_wall_bc(&mut s.temperature, Scalar::Temperature)?;
    apply_scalar_wall_bc(&mut s.concentration, Scalar::Concentration)?;
    apply_vorticity_bc(&mut s.omega, &s.psi)
}

fn state_is_finite(s: &ConservedState) -> bool {
    s.omega.is_finite() && s.temperature.is_finite() && s.concentration.is_finite() && s.psi.is_finite()
}

fn blow_up(s: &ConservedState) -> Error {
    Error::BlowUp {
        time: s.time,
        detail: format!(
            "max |omega| = {:e}, |T| = {:e}, |C| = {:e}, |psi| = {:e}",
            s.omega.max_abs(),
            s.temperature.max_abs(),
            s.concentration.max_abs(),
            s.psi.max_abs()
        ),
    }
}

/// Runs a cavity simulation from rest.
pub fn run(config: &DdcConfig) -> Result<RunResult> {
    Simulation::new(config.clone())?.run_with(|_| {})
}
