//! Uniform vertex-centred grids, nodal fields and error norms.

use crate::error::{Error, Result};

/// Minimum number of intervals per axis; the sixth-order closures reach five nodes inward.
pub const MIN_INTERVALS: usize = 6;

/// Uniform node grid with nodes on the physical boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub width: f64,
    pub height: f64,
    pub dx: f64,
    pub dy: f64,
    pub x0: f64,
    pub y0: f64,
}

impl Grid {
    pub fn new(nx: usize, ny: usize, width: f64, height: f64, x0: f64, y0: f64) -> Result<Self> {
        if nx < MIN_INTERVALS {
            return Err(Error::DimensionTooSmall { axis: "nx", value: nx, min: MIN_INTERVALS });
        }
        if ny < MIN_INTERVALS {
            return Err(Error::DimensionTooSmall { axis: "ny", value: ny, min: MIN_INTERVALS });
        }
        if !(width > 0.0) {
            return Err(Error::NonPositiveExtent { name: "width", value: width });
        }
        if !(height > 0.0) {
            return Err(Error::NonPositiveExtent { name: "height", value: height });
        }
        Ok(Self {
            nx,
            ny,
            width,
            height,
            dx: width / nx as f64,
            dy: height / ny as f64,
            x0,
            y0,
        })
    }

    /// Cavity grid on `[0, 1] x [0, aspect]`.
    pub fn cavity(nx: usize, ny: usize, aspect: f64) -> Result<Self> {
        Self::new(nx, ny, 1.0, aspect, 0.0, 0.0)
    }

    pub fn x(&self, i: usize) -> f64 {
        if i == self.nx {
            self.x0 + self.width
        } else {
            self.x0 + i as f64 * self.dx
        }
    }

    pub fn y(&self, j: usize) -> f64 {
        if j == self.ny {
            self.y0 + self.height
        } else {
            self.y0 + j as f64 * self.dy
        }
    }

    /// Number of nodes along x.
    pub fn nodes_x(&self) -> usize {
        self.nx + 1
    }

    pub fn nodes_y(&self) -> usize {
        self.ny + 1
    }

    pub fn len(&self) -> usize {
        (self.nx + 1) * (self.ny + 1)
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * (self.nx + 1) + i
    }

    /// Index of the node nearest to `(x, y)`, clamped to the grid.
    pub fn nearest_node(&self, x: f64, y: f64) -> (usize, usize) {
        let snap = |v: f64, origin: f64, h: f64, n: usize| -> usize {
            let k = ((v - origin) / h).round();
            if k <= 0.0 {
                0
            } else {
                (k as usize).min(n)
            }
        };
        (snap(x, self.x0, self.dx, self.nx), snap(y, self.y0, self.dy, self.ny))
    }
}

/// One real value per grid node, stored row by row (`j` outer, `i` inner).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: Grid,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn zeros(grid: Grid) -> Self {
        Self { grid, values: vec![0.0; grid.len()] }
    }

    pub fn constant(grid: Grid, c: f64) -> Self {
        Self { grid, values: vec![c; grid.len()] }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for j in 0..=grid.ny {
            let y = grid.y(j);
            for i in 0..=grid.nx {
                values.push(f(grid.x(i), y));
            }
        }
        Self { grid, values }
    }

    pub fn from_values(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { left: values.len(), right: grid.len() });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.grid.index(i, j);
        self.values[k] = v;
    }

    /// Nodes of row `j` (constant y).
    pub fn row(&self, j: usize) -> &[f64] {
        let n = self.grid.nx + 1;
        &self.values[j * n..(j + 1) * n]
    }

    pub fn row_mut(&mut self, j: usize) -> &mut [f64] {
        let n = self.grid.nx + 1;
        &mut self.values[j * n..(j + 1) * n]
    }

    /// Copies column `i` (constant x) into `out`.
    pub fn column_into(&self, i: usize, out: &mut [f64]) {
        let n = self.grid.nx + 1;
        for (j, o) in out.iter_mut().enumerate().take(self.grid.ny + 1) {
            *o = self.values[j * n + i];
        }
    }

    pub fn column(&self, i: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.grid.ny + 1];
        self.column_into(i, &mut out);
        out
    }

    pub fn set_column(&mut self, i: usize, col: &[f64]) {
        let n = self.grid.nx + 1;
        for (j, &c) in col.iter().enumerate().take(self.grid.ny + 1) {
            self.values[j * n + i] = c;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    pub fn check_finite(&self, what: &'static str) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite(what))
        }
    }

    pub fn same_grid(&self, other: &ScalarField) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    pub fn fill(&mut self, c: f64) {
        self.values.iter_mut().for_each(|v| *v = c);
    }
}

/// Physical parameters of the double-diffusive model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub prandtl: f64,
    pub lewis: f64,
    pub rayleigh: f64,
    pub buoyancy_ratio: f64,
    pub aspect: f64,
}

impl PhysicalParams {
    pub fn new(prandtl: f64, lewis: f64, rayleigh: f64, buoyancy_ratio: f64, aspect: f64) -> Result<Self> {
        let positive = |name: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::OutOfRange { name, value: v })
            }
        };
        let non_negative = |name: &'static str, v: f64| {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::OutOfRange { name, value: v })
            }
        };
        positive("prandtl", prandtl)?;
        positive("lewis", lewis)?;
        non_negative("rayleigh", rayleigh)?;
        non_negative("buoyancy_ratio", buoyancy_ratio)?;
        positive("aspect", aspect)?;
        Ok(Self { prandtl, lewis, rayleigh, buoyancy_ratio, aspect })
    }
}

/// Vorticity, temperature and concentration with the derived stream function and velocity.
#[derive(Debug, Clone, PartialEq)]
pub struct ConservedState {
    pub omega: ScalarField,
    pub temperature: ScalarField,
    pub concentration: ScalarField,
    pub psi: ScalarField,
    pub u: ScalarField,
    pub v: ScalarField,
    pub time: f64,
}

impl ConservedState {
    pub fn zeros(grid: Grid) -> Self {
        let z = ScalarField::zeros(grid);
        Self {
            omega: z.clone(),
            temperature: z.clone(),
            concentration: z.clone(),
            psi: z.clone(),
            u: z.clone(),
            v: z,
            time: 0.0,
        }
    }

    pub fn grid(&self) -> &Grid {
        self.omega.grid()
    }
}

/// Discrete error norms of a numerical solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    /// Spacing-weighted two-norm, `sqrt(dx dy sum e^2)`.
    pub l2: f64,
    pub linf: f64,
    /// Root mean square over nodes.
    pub rms: f64,
}

pub fn error_norms(numeric: &ScalarField, exact: &ScalarField) -> Result<ErrorNorms> {
    numeric.same_grid(exact)?;
    let g = numeric.grid();
    let mut norms = norms_of(numeric.values(), exact.values());
    norms.l2 = (g.dx * g.dy).sqrt() * norms.l2;
    Ok(norms)
}

/// One-dimensional analogue of [`error_norms`] with weight `spacing`.
pub fn error_norms_line(numeric: &[f64], exact: &[f64], spacing: f64) -> Result<ErrorNorms> {
    if numeric.len() != exact.len() {
        return Err(Error::LengthMismatch { left: numeric.len(), right: exact.len() });
    }
    let mut norms = norms_of(numeric, exact);
    norms.l2 *= spacing.sqrt();
    Ok(norms)
}

// l2 is returned unweighted (sqrt of the plain sum); callers apply the spacing weight.
fn norms_of(a: &[f64], b: &[f64]) -> ErrorNorms {
    let mut sum = 0.0;
    let mut linf = 0.0_f64;
    for (x, y) in a.iter().zip(b) {
        let e = x - y;
        sum += e * e;
        linf = linf.max(e.abs());
    }
    let count = a.len().max(1) as f64;
    ErrorNorms { l2: sum.sqrt(), linf, rms: (sum / count).sqrt() }
}

/// Observed convergence order between two resolutions.
pub fn observed_order(err_coarse: f64, h_coarse: f64, err_fine: f64, h_fine: f64) -> Result<f64> {
    for (name, v) in [
        ("err_coarse", err_coarse),
        ("h_coarse", h_coarse),
        ("err_fine", err_fine),
        ("h_fine", h_fine),
    ] {
        if !(v > 0.0) {
            return Err(Error::NonPositive(name));
        }
    }
    if h_coarse == h_fine {
        return Err(Error::OutOfRange { name: "h_fine", value: h_fine });
    }
    Ok((err_coarse / err_fine).ln() / (h_coarse / h_fine).ln())
}
