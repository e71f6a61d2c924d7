//! Strong-stability-preserving third-order Runge-Kutta stepping and right-hand side assembly.

use crate::compact::{BoundaryTreatment, FieldDerivative, SchemeOrder};
use crate::ddc::buoyancy_source_with;
use crate::error::{Error, Result};
use crate::grid::{ConservedState, Grid, PhysicalParams, ScalarField};
use crate::hermite::{Transport2d, ALPHA_FLOOR};

/// Stage abscissae of the SSP-RK3 scheme as fractions of the step.
pub const STAGE_OFFSETS: [f64; 3] = [0.0, 1.0, 0.5];

/// A state that can be advanced by [`rk3_step`].
pub trait Evolvable: Clone {
    type Rate;

    fn time(&self) -> f64;
    fn set_time(&mut self, t: f64);
    /// `self += dt * rate` on the evolved components.
    fn add_scaled(&mut self, dt: f64, rate: &Self::Rate);
    /// `self = w * self + (1 - w) * other` on the evolved components.
    fn blend(&mut self, w: f64, other: &Self);
    fn is_finite(&self) -> bool;
}

/// Time derivative of the evolved fields; wall entries are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct RhsEvaluation {
    pub d_omega: ScalarField,
    pub d_temperature: ScalarField,
    pub d_concentration: ScalarField,
}

impl RhsEvaluation {
    pub fn zeros(grid: Grid) -> Self {
        let z = ScalarField::zeros(grid);
        Self { d_omega: z.clone(), d_temperature: z.clone(), d_concentration: z }
    }

    fn fill(&mut self, c: f64) {
        self.d_omega.fill(c);
        self.d_temperature.fill(c);
        self.d_concentration.fill(c);
    }
}

fn axpy(y: &mut [f64], a: f64, x: &[f64]) {
    for (y, x) in y.iter_mut().zip(x) {
        *y += a * x;
    }
}

fn mix(y: &mut [f64], w: f64, x: &[f64]) {
    for (y, x) in y.iter_mut().zip(x) {
        *y = w * *y + (1.0 - w) * x;
    }
}

impl Evolvable for ConservedState {
    type Rate = RhsEvaluation;

    fn time(&self) -> f64 {
        self.time
    }

    fn set_time(&mut self, t: f64) {
        self.time = t;
    }

    fn add_scaled(&mut self, dt: f64, rate: &RhsEvaluation) {
        axpy(self.omega.values_mut(), dt, rate.d_omega.values());
        axpy(self.temperature.values_mut(), dt, rate.d_temperature.values());
        axpy(self.concentration.values_mut(), dt, rate.d_concentration.values());
    }

    fn blend(&mut self, w: f64, other: &Self) {
        mix(self.omega.values_mut(), w, other.omega.values());
        mix(self.temperature.values_mut(), w, other.temperature.values());
        mix(self.concentration.values_mut(), w, other.concentration.values());
    }

    fn is_finite(&self) -> bool {
        self.omega.is_finite() && self.temperature.is_finite() && self.concentration.is_finite()
    }
}

/// A single evolved line of values.
#[derive(Debug, Clone, PartialEq)]
pub struct LineState {
    pub values: Vec<f64>,
    pub time: f64,
}

impl Evolvable for LineState {
    type Rate = Vec<f64>;

    fn time(&self) -> f64 {
        self.time
    }

    fn set_time(&mut self, t: f64) {
        self.time = t;
    }

    fn add_scaled(&mut self, dt: f64, rate: &Vec<f64>) {
        axpy(&mut self.values, dt, rate);
    }

    fn blend(&mut self, w: f64, other: &Self) {
        mix(&mut self.values, w, &other.values);
    }

    fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }
}

/// A single evolved field.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub field: ScalarField,
    pub time: f64,
}

impl Evolvable for FieldState {
    type Rate = ScalarField;

    fn time(&self) -> f64 {
        self.time
    }

    fn set_time(&mut self, t: f64) {
        self.time = t;
    }

    fn add_scaled(&mut self, dt: f64, rate: &ScalarField) {
        axpy(self.field.values_mut(), dt, rate.values());
    }

    fn blend(&mut self, w: f64, other: &Self) {
        mix(self.field.values_mut(), w, other.field.values());
    }

    fn is_finite(&self) -> bool {
        self.field.is_finite()
    }
}

/// One SSP-RK3 step.
///
/// The closure receives the stage state with its time already set to the stage
/// abscissa and may refresh boundary values in place before returning the rate.
pub fn rk3_step<S, F>(state: &S, dt: f64, mut rhs: F) -> Result<S>
where
    S: Evolvable,
    F: FnMut(&mut S, usize) -> Result<S::Rate>,
{
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::NonPositive("dt"));
    }
    let t0 = state.time();
    let mut base = state.clone();
    let r0 = rhs(&mut base, 0)?;

    let mut stage = base.clone();
    stage.add_scaled(dt, &r0);
    stage.set_time(t0 + dt);
    guard(&stage, 1)?;
    let r1 = rhs(&mut stage, 1)?;
    stage.add_scaled(dt, &r1);
    stage.blend(0.25, &base);
    stage.set_time(t0 + 0.5 * dt);
    guard(&stage, 2)?;
    let r2 = rhs(&mut stage, 2)?;
    stage.add_scaled(dt, &r2);
    stage.blend(2.0 / 3.0, &base);
    stage.set_time(t0 + dt);
    guard(&stage, 3)?;
    Ok(stage)
}

fn guard<S: Evolvable>(s: &S, stage: usize) -> Result<()> {
    if s.is_finite() {
        Ok(())
    } else {
        Err(Error::BlowUp { time: s.time(), detail: format!("non-finite values after stage {stage}") })
    }
}

/// Stable step size for the cavity problem, or `dt_override` when given.
pub fn choose_dt(state: &ConservedState, params: &PhysicalParams, cfl: f64, dt_override: Option<f64>) -> Result<f64> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(Error::OutOfRange { name: "cfl", value: cfl });
    }
    if let Some(dt) = dt_override {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::NonPositive("dt"));
        }
        return Ok(dt);
    }
    let g = state.grid();
    let hmin = g.dx.min(g.dy);
    let speed = state.u.max_abs().max(state.v.max_abs());
    let nu = params.prandtl.max(1.0).max(1.0 / params.lewis);
    let advective = hmin / (speed + ALPHA_FLOOR);
    let diffusive = hmin * hmin / (4.0 * nu);
    Ok(cfl * advective.min(diffusive))
}

/// Reusable workspace for evaluating the cavity right-hand side.
#[derive(Debug, Clone)]
pub struct RhsAssembler {
    transport: Transport2d,
    deriv: FieldDerivative,
    tx: ScalarField,
    cx: ScalarField,
}

impl RhsAssembler {
    pub fn new(grid: Grid, order: SchemeOrder) -> Result<Self> {
        Ok(Self {
            transport: Transport2d::new(grid, order, BoundaryTreatment::OneSided)?,
            deriv: FieldDerivative::new(grid, order, BoundaryTreatment::OneSided)?,
            tx: ScalarField::zeros(grid),
            cx: ScalarField::zeros(grid),
        })
    }

    /// Writes convection, diffusion and buoyancy for the current state into `out`.
    pub fn assemble(&mut self, state: &ConservedState, params: &PhysicalParams, out: &mut RhsEvaluation) -> Result<()> {
        out.fill(0.0);
        let ax = state.u.max_abs().max(ALPHA_FLOOR);
        let ay = state.v.max_abs().max(ALPHA_FLOOR);
        let t = &mut self.transport;
        t.add_convection(&state.omega, &state.u, &state.v, ax, ay, &mut out.d_omega)?;
        t.add_diffusion(&state.omega, params.prandtl, &mut out.d_omega)?;
        t.add_convection(&state.temperature, &state.u, &state.v, ax, ay, &mut out.d_temperature)?;
        t.add_diffusion(&state.temperature, 1.0, &mut out.d_temperature)?;
        t.add_convection(&state.concentration, &state.u, &state.v, ax, ay, &mut out.d_concentration)?;
        t.add_diffusion(&state.concentration, 1.0 / params.lewis, &mut out.d_concentration)?;
        if params.rayleigh != 0.0 {
            buoyancy_source_with(
                &self.deriv,
                &state.temperature,
                &state.concentration,
                params,
                &mut self.tx,
                &mut self.cx,
            )?;
            let g = *state.grid();
            for j in 1..g.ny {
                let src = &self.tx.row(j)[1..g.nx];
                let dst = &mut out.d_omega.row_mut(j)[1..g.nx];
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += s;
                }
            }
        }
        Ok(())
    }
}

/// Right-hand side of the vorticity, temperature and concentration equations.
pub fn assemble_rhs(state: &ConservedState, params: &PhysicalParams, order: SchemeOrder) -> Result<RhsEvaluation> {
    let mut asm = RhsAssembler::new(*state.grid(), order)?;
    let mut out = RhsEvaluation::zeros(*state.grid());
    asm.assemble(state, params, &mut out)?;
    Ok(out)
}
