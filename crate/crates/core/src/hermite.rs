//! Flux splitting, Hermite face reconstruction, Hermite diffusion and the line kernels
//! that assemble convective and diffusive operators.

use crate::compact::{BoundaryTreatment, CcdOperator, SchemeOrder};
use crate::error::{Error, Result};
use crate::grid::{Grid, ScalarField};

/// Lower bound on the splitting speed so the split stays defined at rest.
pub const ALPHA_FLOOR: f64 = 1e-8;

const W_OUTER: f64 = 11.0 / 60.0;
const W_CENTER: f64 = 19.0 / 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Global Lax-Friedrichs speed: the largest nodal speed magnitude.
pub fn global_splitting_speed(velocity: &ScalarField) -> Result<f64> {
    velocity.check_finite("splitting speed input")?;
    Ok(velocity.max_abs())
}

/// `F+ = (F + alpha U)/2`, `F- = (F - alpha U)/2`.
pub fn lax_friedrichs_split(flux: &[f64], conserved: &[f64], alpha: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if flux.len() != conserved.len() {
        return Err(Error::LengthMismatch { left: flux.len(), right: conserved.len() });
    }
    if !(alpha >= 0.0) {
        return Err(Error::OutOfRange { name: "alpha", value: alpha });
    }
    let plus = flux.iter().zip(conserved).map(|(f, u)| 0.5 * (f + alpha * u)).collect();
    let minus = flux.iter().zip(conserved).map(|(f, u)| 0.5 * (f - alpha * u)).collect();
    Ok((plus, minus))
}

#[inline]
fn face_plus(f: &[f64], d: &[f64], k: usize, h20: f64) -> f64 {
    W_OUTER * f[k - 1] + W_CENTER * f[k] + W_OUTER * f[k + 1] + h20 * (d[k - 1] + 10.0 * d[k] - d[k + 1])
}

#[inline]
fn face_minus(f: &[f64], d: &[f64], k: usize, h20: f64) -> f64 {
    W_OUTER * f[k + 2] + W_CENTER * f[k + 1] + W_OUTER * f[k] - h20 * (d[k + 2] + 10.0 * d[k + 1] - d[k])
}

#[inline]
fn diffusion_at(v: &[f64], d: &[f64], c: usize, h: f64, inv36h2: f64) -> f64 {
    (v[c - 2] + 80.0 * v[c - 1] - 162.0 * v[c] + 80.0 * v[c + 1] + v[c + 2]
        + 24.0 * h * (d[c - 1] - d[c + 1]))
        * inv36h2
}

fn check_pair(values: &[f64], derivs: &[f64], min: usize) -> Result<()> {
    if values.len() != derivs.len() {
        return Err(Error::LengthMismatch { left: values.len(), right: derivs.len() });
    }
    if values.len() < min {
        return Err(Error::InsufficientData(format!(
            "stencil needs at least {min} nodes, got {}",
            values.len()
        )));
    }
    Ok(())
}

/// Upwind-biased face values of `F+` from nodal values and derivatives.
///
/// For a line of length `m` the result has `m - 3` entries; entry `k - 1` is the face
/// between nodes `k` and `k + 1`.
pub fn reconstruct_face_flux_plus(f_plus: &[f64], f_plus_deriv: &[f64], spacing: f64) -> Result<Vec<f64>> {
    check_pair(f_plus, f_plus_deriv, 4)?;
    let h20 = spacing / 20.0;
    Ok((1..=f_plus.len() - 3).map(|k| face_plus(f_plus, f_plus_deriv, k, h20)).collect())
}

/// Mirror image of [`reconstruct_face_flux_plus`] about each face, with the same indexing.
pub fn reconstruct_face_flux_minus(f_minus: &[f64], f_minus_deriv: &[f64], spacing: f64) -> Result<Vec<f64>> {
    check_pair(f_minus, f_minus_deriv, 4)?;
    let h20 = spacing / 20.0;
    Ok((1..=f_minus.len() - 3).map(|k| face_minus(f_minus, f_minus_deriv, k, h20)).collect())
}

/// Quintic extrapolation one spacing beyond the end of a line.
///
/// `Left` uses the first three (value, derivative) pairs, `Right` the last three.
pub fn extrapolate_boundary_values(values: &[f64], derivs: &[f64], spacing: f64, side: Side) -> Result<(f64, f64)> {
    check_pair(values, derivs, 3)?;
    let n = values.len();
    Ok(match side {
        Side::Left => extrapolate(
            [values[0], values[1], values[2]],
            [derivs[0], derivs[1], derivs[2]],
            spacing,
        ),
        Side::Right => extrapolate(
            [values[n - 1], values[n - 2], values[n - 3]],
            [derivs[n - 1], derivs[n - 2], derivs[n - 3]],
            -spacing,
        ),
    })
}

/// Nodes ordered outward-to-inward; a negative `h` mirrors the formula for the right end.
#[inline]
fn extrapolate(v: [f64; 3], d: [f64; 3], h: f64) -> (f64, f64) {
    let value = -18.0 * v[0] + 9.0 * v[1] + 10.0 * v[2] - h * (9.0 * d[0] + 18.0 * d[1] + 3.0 * d[2]);
    let deriv = (57.0 * v[0] - 24.0 * v[1] - 33.0 * v[2]) / h + 24.0 * d[0] + 57.0 * d[1] + 10.0 * d[2];
    (value, deriv)
}

/// Hermite second-derivative stencil at nodes `2..m-2` of a line of length `m`.
pub fn hermite_diffusion_line(h_values: &[f64], h_derivs: &[f64], spacing: f64) -> Result<Vec<f64>> {
    check_pair(h_values, h_derivs, 5)?;
    let inv = 1.0 / (36.0 * spacing * spacing);
    Ok((2..h_values.len() - 2)
        .map(|c| diffusion_at(h_values, h_derivs, c, spacing, inv))
        .collect())
}

/// Convective and diffusive operators along lines of one fixed length.
///
/// One-sided lines hold `n + 1` nodes with boundary nodes at both ends; results are
/// produced for nodes `1..n`. Periodic lines hold one period of distinct nodes and
/// results are produced everywhere.
#[derive(Debug, Clone)]
pub struct LineKernel {
    op: CcdOperator,
    bc: BoundaryTreatment,
    h: f64,
    ghosts: usize,
    plus: Vec<f64>,
    minus: Vec<f64>,
    dplus: Vec<f64>,
    dminus: Vec<f64>,
    ext_v: Vec<f64>,
    ext_d: Vec<f64>,
    ext_w: Vec<f64>,
    ext_e: Vec<f64>,
    faces: Vec<f64>,
}

impl LineKernel {
    pub fn new(len: usize, spacing: f64, order: SchemeOrder, bc: BoundaryTreatment) -> Result<Self> {
        let op = CcdOperator::new(len, spacing, order, bc)?;
        let ghosts = match bc {
            BoundaryTreatment::OneSided => 1,
            BoundaryTreatment::Periodic => 2,
        };
        let ext = len + 2 * ghosts;
        Ok(Self {
            op,
            bc,
            h: spacing,
            ghosts,
            plus: vec![0.0; len],
            minus: vec![0.0; len],
            dplus: vec![0.0; len],
            dminus: vec![0.0; len],
            ext_v: vec![0.0; ext],
            ext_d: vec![0.0; ext],
            ext_w: vec![0.0; ext],
            ext_e: vec![0.0; ext],
            faces: vec![0.0; ext - 3],
        })
    }

    pub fn len(&self) -> usize {
        self.op.len()
    }

    /// Range of line nodes that receive results.
    pub fn active(&self) -> std::ops::Range<usize> {
        match self.bc {
            BoundaryTreatment::OneSided => 1..self.len() - 1,
            BoundaryTreatment::Periodic => 0..self.len(),
        }
    }

    pub fn derivative(&self, values: &[f64], out: &mut [f64]) {
        self.op.apply(values, out);
    }

    fn extend(bc: BoundaryTreatment, h: f64, v: &[f64], d: &[f64], ev: &mut [f64], ed: &mut [f64]) {
        let n = v.len();
        match bc {
            BoundaryTreatment::OneSided => {
                ev[1..=n].copy_from_slice(v);
                ed[1..=n].copy_from_slice(d);
                let (gv, gd) = extrapolate([v[0], v[1], v[2]], [d[0], d[1], d[2]], h);
                ev[0] = gv;
                ed[0] = gd;
                let (gv, gd) = extrapolate([v[n - 1], v[n - 2], v[n - 3]], [d[n - 1], d[n - 2], d[n - 3]], -h);
                ev[n + 1] = gv;
                ed[n + 1] = gd;
            }
            BoundaryTreatment::Periodic => {
                for k in 0..ev.len() {
                    let src = (k + 2 * n - 2) % n;
                    ev[k] = v[src];
                    ed[k] = d[src];
                }
            }
        }
    }

    /// Adds `-scale * dF/dx` to `out`, with `F = flux` split at speed `alpha` against `conserved`.
    pub fn add_convection(&mut self, flux: &[f64], conserved: &[f64], alpha: f64, scale: f64, out: &mut [f64]) {
        for k in 0..flux.len() {
            let a = alpha * conserved[k];
            self.plus[k] = 0.5 * (flux[k] + a);
            self.minus[k] = 0.5 * (flux[k] - a);
        }
        self.op.apply(&self.plus, &mut self.dplus);
        self.op.apply(&self.minus, &mut self.dminus);
        Self::extend(self.bc, self.h, &self.plus, &self.dplus, &mut self.ext_v, &mut self.ext_d);
        Self::extend(self.bc, self.h, &self.minus, &self.dminus, &mut self.ext_w, &mut self.ext_e);
        let h20 = self.h / 20.0;
        for (f, face) in self.faces.iter_mut().enumerate() {
            let k = f + 1;
            *face = face_plus(&self.ext_v, &self.ext_d, k, h20) + face_minus(&self.ext_w, &self.ext_e, k, h20);
        }
        let c = scale / self.h;
        // Face f lies between extended nodes f+1 and f+2, i.e. line nodes f+1-g and f+2-g.
        let g = self.ghosts;
        for i in self.active() {
            let right = self.faces[i + g - 1];
            let left = self.faces[i + g - 2];
            out[i] -= c * (right - left);
        }
    }

    /// Adds `scale * d2H/dx2` to `out`.
    pub fn add_diffusion(&mut self, values: &[f64], scale: f64, out: &mut [f64]) {
        self.op.apply(values, &mut self.dplus);
        Self::extend(self.bc, self.h, values, &self.dplus, &mut self.ext_v, &mut self.ext_d);
        let inv = scale / (36.0 * self.h * self.h);
        let g = self.ghosts;
        for i in self.active() {
            out[i] += diffusion_at(&self.ext_v, &self.ext_d, i + g, self.h, inv);
        }
    }
}

/// Two-dimensional convection and diffusion assembled line by line.
///
/// One-sided mode updates interior nodes only. Periodic mode treats the last row and
/// column as duplicates of the first and keeps them in sync.
#[derive(Debug, Clone)]
pub struct Transport2d {
    grid: Grid,
    bc: BoundaryTreatment,
    xk: LineKernel,
    yk: LineKernel,
    line_q: Vec<f64>,
    line_f: Vec<f64>,
    line_out: Vec<f64>,
}

impl Transport2d {
    pub fn new(grid: Grid, order: SchemeOrder, bc: BoundaryTreatment) -> Result<Self> {
        let shrink = usize::from(bc == BoundaryTreatment::Periodic);
        let nmax = grid.nx.max(grid.ny) + 1;
        Ok(Self {
            grid,
            bc,
            xk: LineKernel::new(grid.nx + 1 - shrink, grid.dx, order, bc)?,
            yk: LineKernel::new(grid.ny + 1 - shrink, grid.dy, order, bc)?,
            line_q: vec![0.0; nmax],
            line_f: vec![0.0; nmax],
            line_out: vec![0.0; nmax],
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    fn lines(&self) -> (std::ops::Range<usize>, std::ops::Range<usize>) {
        match self.bc {
            BoundaryTreatment::OneSided => (1..self.grid.ny, 1..self.grid.nx),
            BoundaryTreatment::Periodic => (0..self.grid.ny, 0..self.grid.nx),
        }
    }

    fn check(&self, f: &ScalarField) -> Result<()> {
        if *f.grid() == self.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Adds `-(d(u q)/dx + d(v q)/dy)` to `out` using split speeds `alpha_x`, `alpha_y`.
    pub fn add_convection(
        &mut self,
        q: &ScalarField,
        u: &ScalarField,
        v: &ScalarField,
        alpha_x: f64,
        alpha_y: f64,
        out: &mut ScalarField,
    ) -> Result<()> {
        for f in [q, u, v, &*out] {
            self.check(f)?;
        }
        let (rows, cols) = self.lines();
        let mx = self.xk.len();
        for j in rows {
            let qr = &q.row(j)[..mx];
            let ur = &u.row(j)[..mx];
            for k in 0..mx {
                self.line_f[k] = ur[k] * qr[k];
            }
            let dst = &mut out.row_mut(j)[..mx];
            self.xk.add_convection(&self.line_f[..mx], qr, alpha_x, 1.0, dst);
        }
        let my = self.yk.len();
        let stride = self.grid.nx + 1;
        for i in cols {
            for k in 0..my {
                let idx = k * stride + i;
                self.line_q[k] = q.values()[idx];
                self.line_f[k] = v.values()[idx] * self.line_q[k];
                self.line_out[k] = out.values()[idx];
            }
            self.yk.add_convection(&self.line_f[..my], &self.line_q[..my], alpha_y, 1.0, &mut self.line_out[..my]);
            let o = out.values_mut();
            for k in 0..my {
                o[k * stride + i] = self.line_out[k];
            }
        }
        self.sync_periodic(out);
        Ok(())
    }

    /// Adds `scale * (d2h/dx2 + d2h/dy2)` to `out`.
    pub fn add_diffusion(&mut self, h: &ScalarField, scale: f64, out: &mut ScalarField) -> Result<()> {
        self.check(h)?;
        self.check(out)?;
        let (rows, cols) = self.lines();
        let mx = self.xk.len();
        for j in rows {
            let hr = &h.row(j)[..mx];
            let dst = &mut out.row_mut(j)[..mx];
            self.xk.add_diffusion(hr, scale, dst);
        }
        let my = self.yk.len();
        let stride = self.grid.nx + 1;
        for i in cols {
            for k in 0..my {
                let idx = k * stride + i;
                self.line_q[k] = h.values()[idx];
                self.line_out[k] = out.values()[idx];
            }
            self.yk.add_diffusion(&self.line_q[..my], scale, &mut self.line_out[..my]);
            let o = out.values_mut();
            for k in 0..my {
                o[k * stride + i] = self.line_out[k];
            }
        }
        self.sync_periodic(out);
        Ok(())
    }

    fn sync_periodic(&self, out: &mut ScalarField) {
        if self.bc != BoundaryTreatment::Periodic {
            return;
        }
        let g = self.grid;
        for j in 0..g.ny {
            let v = out.get(0, j);
            out.set(g.nx, j, v);
        }
        for i in 0..=g.nx {
            let v = out.get(i, 0);
            out.set(i, g.ny, v);
        }
    }
}

/// Conservative convective term `-(d(u q)/dx + d(v q)/dy)` at the updated nodes.
pub fn convective_divergence(
    component: &ScalarField,
    u: &ScalarField,
    v: &ScalarField,
    order: SchemeOrder,
    bc: BoundaryTreatment,
) -> Result<ScalarField> {
    let alpha_x = global_splitting_speed(u)?.max(ALPHA_FLOOR);
    let alpha_y = global_splitting_speed(v)?.max(ALPHA_FLOOR);
    component.check_finite("convected component")?;
    let mut t = Transport2d::new(*component.grid(), order, bc)?;
    let mut out = ScalarField::zeros(*component.grid());
    t.add_convection(component, u, v, alpha_x, alpha_y, &mut out)?;
    Ok(out)
}
