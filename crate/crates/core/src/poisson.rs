//! Fourth-order compact nine-point Poisson solver for the stream function, `lap(psi) = -omega`,
//! with Dirichlet walls.
//!
//! The discrete operator at an interior node is
//!
//! ```text
//! 2(5/dx^2 - 1/dy^2)(E + W) + 2(5/dy^2 - 1/dx^2)(N + S)
//!   + (1/dx^2 + 1/dy^2)(NE + NW + SE + SW) - 20(1/dx^2 + 1/dy^2) C
//!   = -(8 omega_C + omega_E + omega_W + omega_N + omega_S)
//! ```
//!
//! Convergence is measured on the max-norm residual relative to `max(1, |rhs|_inf)`.

use crate::error::{Error, Result};
use crate::grid::ScalarField;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoissonStrategy {
    PlainSor,
    MultigridVCycle,
}

impl std::str::FromStr for PoissonStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sor" | "plain_sor" | "plainsor" => Ok(Self::PlainSor),
            "multigrid" | "mg" | "vcycle" => Ok(Self::MultigridVCycle),
            _ => Err(Error::InvalidValue { key: "poisson.strategy".into(), value: s.into() }),
        }
    }
}

impl std::fmt::Display for PoissonStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::PlainSor => "sor",
            Self::MultigridVCycle => "multigrid",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonSettings {
    /// Over-relaxation factor for plain SOR and the coarsest-level solve.
    pub relaxation: f64,
    pub tolerance: f64,
    /// Sweeps for plain SOR, cycles for multigrid.
    pub max_iterations: usize,
    pub strategy: PoissonStrategy,
    pub pre_smooth: usize,
    pub post_smooth: usize,
    pub coarsest_size: usize,
    /// Relaxation factor used by the multigrid smoother.
    pub smoother_relaxation: f64,
}

impl Default for PoissonSettings {
    fn default() -> Self {
        Self {
            relaxation: 1.8,
            tolerance: 1e-10,
            max_iterations: 20_000,
            strategy: PoissonStrategy::MultigridVCycle,
            pre_smooth: 2,
            post_smooth: 2,
            coarsest_size: 4,
            smoother_relaxation: 1.0,
        }
    }
}

impl PoissonSettings {
    pub fn validate(&self) -> Result<()> {
        check_relaxation("poisson.relax", self.relaxation)?;
        check_relaxation("poisson.smoother_relax", self.smoother_relaxation)?;
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::OutOfRange { name: "poisson.tol", value: self.tolerance });
        }
        if self.max_iterations == 0 {
            return Err(Error::NonPositive("poisson.max_iterations"));
        }
        if self.coarsest_size < 2 {
            return Err(Error::OutOfRange { name: "poisson.coarsest_size", value: self.coarsest_size as f64 });
        }
        Ok(())
    }
}

fn check_relaxation(name: &'static str, w: f64) -> Result<()> {
    if w > 0.0 && w < 2.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value: w })
    }
}

/// Summary of one solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonOutcome {
    pub iterations: usize,
    pub converged: bool,
    /// Final max-norm residual.
    pub residual: f64,
    /// Smoothing sweeps and residual evaluations in fine-grid equivalents.
    pub work_units: f64,
    /// Multigrid was requested but the grid does not coarsen; plain SOR was used.
    pub fell_back: bool,
}

#[derive(Debug, Clone)]
struct Level {
    nx: usize,
    ny: usize,
    ce: f64,
    cn: f64,
    cc: f64,
    cd: f64,
    u: Vec<f64>,
    f: Vec<f64>,
    r: Vec<f64>,
}

impl Level {
    fn new(nx: usize, ny: usize, dx: f64, dy: f64) -> Self {
        let (ix, iy) = (1.0 / (dx * dx), 1.0 / (dy * dy));
        let n = (nx + 1) * (ny + 1);
        Self {
            nx,
            ny,
            ce: 2.0 * (5.0 * ix - iy),
            cn: 2.0 * (5.0 * iy - ix),
            cc: ix + iy,
            cd: -20.0 * (ix + iy),
            u: vec![0.0; n],
            f: vec![0.0; n],
            r: vec![0.0; n],
        }
    }

    fn size(&self) -> f64 {
        ((self.nx + 1) * (self.ny + 1)) as f64
    }

    #[inline]
    fn off_center(&self, u: &[f64], k: usize) -> f64 {
        let s = self.nx + 1;
        self.ce * (u[k + 1] + u[k - 1])
            + self.cn * (u[k + s] + u[k - s])
            + self.cc * (u[k + s + 1] + u[k + s - 1] + u[k - s + 1] + u[k - s - 1])
    }

    fn sweep(&mut self, w: f64) {
        let s = self.nx + 1;
        let inv = 1.0 / self.cd;
        for j in 1..self.ny {
            for i in 1..self.nx {
                let k = j * s + i;
                let target = (self.f[k] - self.off_center(&self.u, k)) * inv;
                self.u[k] += w * (target - self.u[k]);
            }
        }
    }

    /// Fills `r` and returns its max norm.
    fn residual(&mut self) -> f64 {
        let s = self.nx + 1;
        let mut m: f64 = 0.0;
        for j in 1..self.ny {
            for i in 1..self.nx {
                let k = j * s + i;
                let r = self.f[k] - self.off_center(&self.u, k) - self.cd * self.u[k];
                self.r[k] = r;
                m = m.max(r.abs());
            }
        }
        m
    }

    fn rhs_norm(&self) -> f64 {
        self.f.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

fn compact_rhs(omega: &ScalarField, out: &mut [f64]) {
    let g = omega.grid();
    let s = g.nx + 1;
    let w = omega.values();
    out.iter_mut().for_each(|v| *v = 0.0);
    for j in 1..g.ny {
        for i in 1..g.nx {
            let k = j * s + i;
            out[k] = -(8.0 * w[k] + w[k + 1] + w[k - 1] + w[k + s] + w[k - s]);
        }
    }
}

fn fine_level(psi: &ScalarField, omega: &ScalarField) -> Result<Level> {
    psi.same_grid(omega)?;
    let g = psi.grid();
    if g.nx < 2 || g.ny < 2 {
        return Err(Error::Dimension(format!("poisson grid {}x{} has no interior", g.nx, g.ny)));
    }
    let mut lv = Level::new(g.nx, g.ny, g.dx, g.dy);
    lv.u.copy_from_slice(psi.values());
    compact_rhs(omega, &mut lv.f);
    Ok(lv)
}

/// Right side minus left side of the compact scheme at interior nodes; zero on walls.
pub fn compact_poisson_residual(psi: &ScalarField, omega: &ScalarField) -> Result<ScalarField> {
    let mut lv = fine_level(psi, omega)?;
    lv.residual();
    ScalarField::from_values(*psi.grid(), lv.r)
}

/// One lexicographic SOR pass; returns the updated field and the post-sweep residual max norm.
pub fn sor_sweep(psi: &ScalarField, omega: &ScalarField, relaxation: f64) -> Result<(ScalarField, f64)> {
    check_relaxation("relaxation", relaxation)?;
    let mut lv = fine_level(psi, omega)?;
    lv.sweep(relaxation);
    let r = lv.residual();
    Ok((ScalarField::from_values(*psi.grid(), lv.u)?, r))
}

/// Reusable solver holding the multigrid hierarchy for one grid.
#[derive(Debug, Clone)]
pub struct PoissonSolver {
    settings: PoissonSettings,
    levels: Vec<Level>,
    fell_back: bool,
}

impl PoissonSolver {
    pub fn new(grid: &crate::grid::Grid, settings: PoissonSettings) -> Result<Self> {
        settings.validate()?;
        if grid.nx < 2 || grid.ny < 2 {
            return Err(Error::Dimension(format!("poisson grid {}x{} has no interior", grid.nx, grid.ny)));
        }
        let mut levels = vec![Level::new(grid.nx, grid.ny, grid.dx, grid.dy)];
        let mut fell_back = false;
        if settings.strategy == PoissonStrategy::MultigridVCycle {
            let (mut nx, mut ny, mut dx, mut dy) = (grid.nx, grid.ny, grid.dx, grid.dy);
            while nx % 2 == 0 && ny % 2 == 0 && nx.min(ny) > settings.coarsest_size && nx.min(ny) >= 4 {
                nx /= 2;
                ny /= 2;
                dx *= 2.0;
                dy *= 2.0;
                levels.push(Level::new(nx, ny, dx, dy));
            }
            if levels.len() == 1 || nx.min(ny) > 2 * settings.coarsest_size {
                levels.truncate(1);
                fell_back = true;
            }
        }
        Ok(Self { settings, levels, fell_back })
    }

    pub fn settings(&self) -> &PoissonSettings {
        &self.settings
    }

    /// Number of grid levels in use (1 for plain SOR).
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Solves in place; `psi` supplies the initial guess and the wall values.
    pub fn solve(&mut self, psi: &mut ScalarField, omega: &ScalarField) -> Result<PoissonOutcome> {
        psi.same_grid(omega)?;
        {
            let g = psi.grid();
            if g.nx != self.levels[0].nx || g.ny != self.levels[0].ny {
                return Err(Error::GridMismatch);
            }
        }
        omega.check_finite("vorticity")?;
        let fine = &mut self.levels[0];
        fine.u.copy_from_slice(psi.values());
        compact_rhs(omega, &mut fine.f);
        let target = self.settings.tolerance * fine.rhs_norm().max(1.0);
        let out = if self.levels.len() == 1 { self.run_sor(target) } else { self.run_multigrid(target) };
        psi.values_mut().copy_from_slice(&self.levels[0].u);
        Ok(out)
    }

    fn run_sor(&mut self, target: f64) -> PoissonOutcome {
        let w = self.settings.relaxation;
        let lv = &mut self.levels[0];
        let mut res = lv.residual();
        let mut work = 1.0;
        let mut it = 0;
        while res > target && it < self.settings.max_iterations {
            lv.sweep(w);
            res = lv.residual();
            work += 2.0;
            it += 1;
        }
        PoissonOutcome { iterations: it, converged: res <= target, residual: res, work_units: work, fell_back: self.fell_back }
    }

    fn run_multigrid(&mut self, target: f64) -> PoissonOutcome {
        let fine_size = self.levels[0].size();
        let mut work = 1.0;
        let mut res = self.levels[0].residual();
        let mut it = 0;
        while res > target && it < self.settings.max_iterations {
            work += self.vcycle(0, target) / fine_size;
            res = self.levels[0].residual();
            work += 1.0;
            it += 1;
        }
        PoissonOutcome { iterations: it, converged: res <= target, residual: res, work_units: work, fell_back: false }
    }

    /// Returns work in node updates.
    fn vcycle(&mut self, l: usize, target: f64) -> f64 {
        let s = self.settings;
        let last = self.levels.len() - 1;
        if l == last {
            let lv = &mut self.levels[l];
            let goal = (0.01 * target).max(1e-3 * lv.rhs_norm());
            let mut work = lv.size();
            let mut cap = 0;
            while lv.residual() > goal && cap < 10_000 {
                lv.sweep(s.relaxation);
                work += 2.0 * lv.size();
                cap += 1;
            }
            return work;
        }
        let mut work = 0.0;
        {
            let lv = &mut self.levels[l];
            for _ in 0..s.pre_smooth {
                lv.sweep(s.smoother_relaxation);
            }
            lv.residual();
            work += (s.pre_smooth + 1) as f64 * lv.size();
        }
        let (upper, lower) = self.levels.split_at_mut(l + 1);
        let (fine, coarse) = (&mut upper[l], &mut lower[0]);
        restrict(fine, coarse);
        coarse.u.iter_mut().for_each(|v| *v = 0.0);
        work += self.vcycle(l + 1, target);
        let (upper, lower) = self.levels.split_at_mut(l + 1);
        prolong_add(&lower[0], &mut upper[l]);
        let lv = &mut self.levels[l];
        for _ in 0..s.post_smooth {
            lv.sweep(s.smoother_relaxation);
        }
        work + s.post_smooth as f64 * lv.size()
    }
}

/// Full-weighting restriction of `fine.r` into `coarse.f`.
fn restrict(fine: &Level, coarse: &mut Level) {
    let fs = fine.nx + 1;
    let cs = coarse.nx + 1;
    let r = &fine.r;
    coarse.f.iter_mut().for_each(|v| *v = 0.0);
    for jc in 1..coarse.ny {
        for ic in 1..coarse.nx {
            let k = 2 * jc * fs + 2 * ic;
            let edge = r[k + 1] + r[k - 1] + r[k + fs] + r[k - fs];
            let corner = r[k + fs + 1] + r[k + fs - 1] + r[k - fs + 1] + r[k - fs - 1];
            coarse.f[jc * cs + ic] = (4.0 * r[k] + 2.0 * edge + corner) / 16.0;
        }
    }
}

/// Bilinear interpolation of `coarse.u` added to the interior of `fine.u`.
fn prolong_add(coarse: &Level, fine: &mut Level) {
    let fs = fine.nx + 1;
    let cs = coarse.nx + 1;
    let c = &coarse.u;
    for j in 1..fine.ny {
        let (jc, jo) = (j / 2, j % 2);
        for i in 1..fine.nx {
            let (ic, io) = (i / 2, i % 2);
            let k = jc * cs + ic;
            let e = match (io, jo) {
                (0, 0) => c[k],
                (1, 0) => 0.5 * (c[k] + c[k + 1]),
                (0, 1) => 0.5 * (c[k] + c[k + cs]),
                _ => 0.25 * (c[k] + c[k + 1] + c[k + cs] + c[k + cs + 1]),
            };
            fine.u[j * fs + i] += e;
        }
    }
}

/// Solves for the stream function starting from `psi_initial`.
pub fn solve_stream_function(
    omega: &ScalarField,
    psi_initial: &ScalarField,
    settings: PoissonSettings,
) -> Result<(ScalarField, PoissonOutcome)> {
    let mut solver = PoissonSolver::new(psi_initial.grid(), settings)?;
    let mut psi = psi_initial.clone();
    let out = solver.solve(&mut psi, omega)?;
    Ok((psi, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compact::tests::dense_solve;
    use crate::grid::{observed_order, Grid};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn unit(n: usize) -> Grid {
        Grid::new(n, n, 1.0, 1.0, 0.0, 0.0).unwrap()
    }

    fn manufactured(g: Grid) -> (ScalarField, ScalarField) {
        let psi = ScalarField::from_fn(g, |x, y| (PI * x).sin() * (PI * y / g.height).sin());
        let k = PI * PI * (1.0 + 1.0 / (g.height * g.height));
        let omega = ScalarField::from_fn(g, |x, y| k * (PI * x).sin() * (PI * y / g.height).sin());
        (psi, omega)
    }

    #[test]
    fn homogeneous_problem() {
        let g = unit(8);
        let z = ScalarField::zeros(g);
        assert_eq!(compact_poisson_residual(&z, &z).unwrap().max_abs(), 0.0);
        let (psi, out) = solve_stream_function(&z, &z, PoissonSettings::default()).unwrap();
        assert!(out.converged && out.iterations <= 1);
        assert_eq!(psi.max_abs(), 0.0);
    }

    #[test]
    fn polynomial_exactness_of_stencil() {
        // The nine-point scheme with its weighted right side is exact for quintics.
        let g = Grid::new(6, 9, 1.3, 2.1, 0.2, -0.4).unwrap();
        let psi = ScalarField::from_fn(g, |x, y| x.powi(4) * y + x * x * y * y * y - 2.0 * y.powi(5) + x);
        let omega = ScalarField::from_fn(g, |x, y| -(18.0 * x * x * y - 38.0 * y.powi(3)));
        let r = compact_poisson_residual(&psi, &omega).unwrap();
        assert!(r.max_abs() < 1e-9, "{}", r.max_abs());
    }

    fn dense_reference(g: Grid, omega: &ScalarField) -> ScalarField {
        let lv = Level::new(g.nx, g.ny, g.dx, g.dy);
        let s = g.nx + 1;
        let idx = |i: usize, j: usize| (j - 1) * (g.nx - 1) + (i - 1);
        let n = (g.nx - 1) * (g.ny - 1);
        let mut a = vec![vec![0.0; n]; n];
        let mut b = vec![0.0; n];
        let mut f = vec![0.0; g.len()];
        compact_rhs(omega, &mut f);
        for j in 1..g.ny {
            for i in 1..g.nx {
                let row = idx(i, j);
                b[row] = f[j * s + i];
                for dj in -1i32..=1 {
                    for di in -1i32..=1 {
                        let (ii, jj) = ((i as i32 + di) as usize, (j as i32 + dj) as usize);
                        let c = match (di.abs(), dj.abs()) {
                            (0, 0) => lv.cd,
                            (1, 0) => lv.ce,
                            (0, 1) => lv.cn,
                            _ => lv.cc,
                        };
                        if ii > 0 && ii < g.nx && jj > 0 && jj < g.ny {
                            a[row][idx(ii, jj)] += c;
                        }
                    }
                }
            }
        }
        let x = dense_solve(a, b);
        let mut psi = ScalarField::zeros(g);
        for j in 1..g.ny {
            for i in 1..g.nx {
                psi.set(i, j, x[idx(i, j)]);
            }
        }
        psi
    }

    #[test]
    fn dense_solution_has_tiny_residual_and_matches_solver() {
        let g = Grid::new(8, 8, 1.0, 2.0, 0.0, 0.0).unwrap();
        let omega = ScalarField::from_fn(g, |x, y| (3.0 * x).exp() * (y - 0.3).cos() + x * y);
        let exact = dense_reference(g, &omega);
        let r = compact_poisson_residual(&exact, &omega).unwrap();
        assert!(r.max_abs() <= 1e-11, "{}", r.max_abs());
        for strategy in [PoissonStrategy::PlainSor, PoissonStrategy::MultigridVCycle] {
            let s = PoissonSettings { strategy, ..PoissonSettings::default() };
            let (psi, out) = solve_stream_function(&omega, &ScalarField::zeros(g), s).unwrap();
            assert!(out.converged);
            for k in 0..g.len() {
                assert!((psi.values()[k] - exact.values()[k]).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn converged_field_is_a_fixed_point() {
        let g = unit(16);
        let (_, omega) = manufactured(g);
        let tight = PoissonSettings { tolerance: 1e-13, ..PoissonSettings::default() };
        let (psi, out) = solve_stream_function(&omega, &ScalarField::zeros(g), tight).unwrap();
        assert!(out.converged);
        let (next, r) = sor_sweep(&psi, &omega, 1.8).unwrap();
        let scale = 12.0 * omega.max_abs();
        assert!(r <= 1e-10 * scale, "{r}");
        for k in 0..g.len() {
            assert!((next.values()[k] - psi.values()[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn gauss_seidel_residual_decreases() {
        let g = unit(16);
        let (_, omega) = manufactured(g);
        let mut psi = ScalarField::zeros(g);
        let mut last = compact_poisson_residual(&psi, &omega).unwrap().max_abs();
        for _ in 0..10 {
            let (p, r) = sor_sweep(&psi, &omega, 1.0).unwrap();
            assert!(r < last, "{r} !< {last}");
            last = r;
            psi = p;
        }
    }

    #[test]
    fn relaxation_range() {
        let z = ScalarField::zeros(unit(8));
        assert!(matches!(sor_sweep(&z, &z, 2.5), Err(Error::OutOfRange { .. })));
        assert!(sor_sweep(&z, &z, 0.0).is_err());
        let bad = PoissonSettings { relaxation: 2.0, ..PoissonSettings::default() };
        assert!(solve_stream_function(&z, &z, bad).is_err());
    }

    #[test]
    fn residual_converges_at_fourth_order() {
        let res = |n: usize| {
            let (psi, omega) = manufactured(unit(n));
            compact_poisson_residual(&psi, &omega).unwrap().max_abs()
        };
        // Truncation error is exactly fourth order and approaches 4 from below.
        let p = observed_order(res(32), 2.0, res(64), 1.0).unwrap();
        assert!(p >= 3.95, "{p}");
    }

    fn solution_error(n: usize) -> f64 {
        let g = Grid::new(n, 2 * n, 1.0, 2.0, 0.0, 0.0).unwrap();
        let (exact, omega) = manufactured(g);
        let (psi, out) = solve_stream_function(&omega, &ScalarField::zeros(g), PoissonSettings::default()).unwrap();
        assert!(out.converged);
        let d: Vec<f64> = psi.values().iter().zip(exact.values()).map(|(a, b)| a - b).collect();
        d.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    #[test]
    fn manufactured_solution_order() {
        let e: Vec<f64> = [8, 16, 32].iter().map(|&n| solution_error(n)).collect();
        assert!(e[1] < 1e-4);
        for w in e.windows(2) {
            let p = observed_order(w[0], 2.0, w[1], 1.0).unwrap();
            assert!(p >= 4.0, "{p}");
        }
    }

    #[test]
    fn multigrid_needs_less_work() {
        let g = unit(64);
        let omega = ScalarField::from_fn(g, |x, y| (5.0 * x * y).sin() + x);
        let z = ScalarField::zeros(g);
        let mg = solve_stream_function(&omega, &z, PoissonSettings::default()).unwrap().1;
        let sor = PoissonSettings { strategy: PoissonStrategy::PlainSor, ..PoissonSettings::default() };
        let sor = solve_stream_function(&omega, &z, sor).unwrap().1;
        assert!(mg.converged && sor.converged);
        assert!(!mg.fell_back);
        assert!(mg.work_units < sor.work_units, "{} vs {}", mg.work_units, sor.work_units);
    }

    #[test]
    fn coarsening_rule() {
        let depth = |nx: usize, ny: usize| {
            let g = Grid::cavity(nx, ny, ny as f64 / nx as f64).unwrap();
            let s = PoissonSolver::new(&g, PoissonSettings::default()).unwrap();
            (s.depth(), s.fell_back)
        };
        assert_eq!(depth(40, 80), (4, false));
        assert_eq!(depth(64, 64), (5, false));
        assert_eq!(depth(30, 60), (1, true));
        assert_eq!(depth(21, 42), (1, true));
    }

    #[test]
    fn strategies_agree_and_residual_is_honest() {
        let g = Grid::cavity(24, 48, 2.0).unwrap();
        let omega = ScalarField::from_fn(g, |x, y| 100.0 * (x - 0.3).powi(2) * (y * 2.0).cos());
        let z = ScalarField::zeros(g);
        let s = PoissonSettings::default();
        let (a, oa) = solve_stream_function(&omega, &z, s).unwrap();
        let (b, ob) =
            solve_stream_function(&omega, &z, PoissonSettings { strategy: PoissonStrategy::PlainSor, ..s }).unwrap();
        assert!(oa.converged && ob.converged);
        let scale = {
            let mut f = vec![0.0; g.len()];
            compact_rhs(&omega, &mut f);
            f.iter().fold(1.0f64, |m, v| m.max(v.abs()))
        };
        for (psi, o) in [(&a, oa), (&b, ob)] {
            let r = compact_poisson_residual(psi, &omega).unwrap().max_abs();
            assert!(r <= s.tolerance * scale);
            assert!((r - o.residual).abs() <= 1e-12 * scale);
        }
        for k in 0..g.len() {
            assert!((a.values()[k] - b.values()[k]).abs() <= 10.0 * s.tolerance * scale * g.dx * g.dx);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn maximum_principle(vals in proptest::collection::vec(0.0f64..5.0, 17 * 17)) {
            let g = unit(16);
            let omega = ScalarField::from_values(g, vals).unwrap();
            let (psi, out) = solve_stream_function(&omega, &ScalarField::zeros(g), PoissonSettings::default()).unwrap();
            prop_assert!(out.converged);
            prop_assert!(psi.min() >= -10.0 * 1e-10);
        }
    }
}
