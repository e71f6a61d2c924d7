//! Compact first-derivative operators (CCD4 and CCD6) and tridiagonal solvers.

use crate::error::{Error, Result};
use crate::grid::{Grid, ScalarField};

const PIVOT_FLOOR: f64 = 1e-14;

/// Selects the compact derivative family and, with it, the Hermite scheme order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeOrder {
    Chd4,
    Chd6,
}

impl SchemeOrder {
    /// Nominal order of accuracy.
    pub fn nominal(self) -> u32 {
        match self {
            SchemeOrder::Chd4 => 4,
            SchemeOrder::Chd6 => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeOrder::Chd4 => "chd4",
            SchemeOrder::Chd6 => "chd6",
        }
    }

    /// Shortest line the one-sided operator accepts. Four CHD4 nodes give a singular system.
    pub fn min_one_sided_len(self) -> usize {
        match self {
            SchemeOrder::Chd4 => 5,
            SchemeOrder::Chd6 => 7,
        }
    }
}

impl std::str::FromStr for SchemeOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "chd4" => Ok(SchemeOrder::Chd4),
            "chd6" => Ok(SchemeOrder::Chd6),
            _ => Err(Error::InvalidValue { key: "scheme".into(), value: s.into() }),
        }
    }
}

impl std::fmt::Display for SchemeOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryTreatment {
    /// The line holds one period; the last sample is not a duplicate of the first.
    Periodic,
    OneSided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// Solves a tridiagonal system by the Thomas algorithm.
pub fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    check_bands(lower, diag, upper, rhs)?;
    let mut a = vec![0.0; n];
    a[1..].copy_from_slice(lower);
    let mut c = vec![0.0; n];
    c[..n - 1].copy_from_slice(upper);
    let t = Thomas::factor(&a, diag, &c)?;
    let mut x = rhs.to_vec();
    t.solve_in_place(&mut x);
    Ok(x)
}

/// Solves a tridiagonal system with wrap-around entries `corner_lo = A[n-1][0]` and
/// `corner_hi = A[0][n-1]` using the Sherman-Morrison reduction.
pub fn solve_cyclic_tridiagonal(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    corner_lo: f64,
    corner_hi: f64,
    rhs: &[f64],
) -> Result<Vec<f64>> {
    if diag.len() < 3 {
        return Err(Error::Dimension(format!(
            "cyclic system needs at least 3 unknowns, got {}",
            diag.len()
        )));
    }
    check_bands(lower, diag, upper, rhs)?;
    let n = diag.len();
    let mut a = vec![0.0; n];
    a[1..].copy_from_slice(lower);
    let mut c = vec![0.0; n];
    c[..n - 1].copy_from_slice(upper);
    let cyc = Cyclic::factor(&a, diag, &c, corner_lo, corner_hi)?;
    let mut x = rhs.to_vec();
    cyc.solve_in_place(&mut x);
    Ok(x)
}

fn check_bands(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<()> {
    let n = diag.len();
    if n < 2 {
        return Err(Error::Dimension(format!("tridiagonal system needs n >= 2, got {n}")));
    }
    for len in [lower.len(), upper.len()] {
        if len != n - 1 {
            return Err(Error::LengthMismatch { left: len, right: n - 1 });
        }
    }
    if rhs.len() != n {
        return Err(Error::LengthMismatch { left: rhs.len(), right: n });
    }
    Ok(())
}

/// LU factors of a tridiagonal matrix. `a[0]` and `c[n-1]` are ignored.
#[derive(Debug, Clone)]
struct Thomas {
    a: Vec<f64>,
    cp: Vec<f64>,
    inv: Vec<f64>,
}

impl Thomas {
    fn factor(a: &[f64], b: &[f64], c: &[f64]) -> Result<Self> {
        let n = b.len();
        let mut cp = vec![0.0; n];
        let mut inv = vec![0.0; n];
        for i in 0..n {
            let denom = if i == 0 { b[0] } else { b[i] - a[i] * cp[i - 1] };
            if !(denom.abs() >= PIVOT_FLOOR) {
                return Err(Error::ZeroPivot { row: i });
            }
            inv[i] = 1.0 / denom;
            cp[i] = if i + 1 < n { c[i] * inv[i] } else { 0.0 };
        }
        Ok(Self { a: a.to_vec(), cp, inv })
    }

    fn solve_in_place(&self, d: &mut [f64]) {
        let n = d.len();
        d[0] *= self.inv[0];
        for i in 1..n {
            d[i] = (d[i] - self.a[i] * d[i - 1]) * self.inv[i];
        }
        for i in (0..n - 1).rev() {
            d[i] -= self.cp[i] * d[i + 1];
        }
    }
}

/// Sherman-Morrison factors of a cyclic tridiagonal matrix.
#[derive(Debug, Clone)]
struct Cyclic {
    inner: Thomas,
    z: Vec<f64>,
    gamma: f64,
    corner_hi: f64,
    denom: f64,
}

impl Cyclic {
    fn factor(a: &[f64], b: &[f64], c: &[f64], corner_lo: f64, corner_hi: f64) -> Result<Self> {
        let n = b.len();
        let gamma = if b[0] != 0.0 { -b[0] } else { -1.0 };
        let mut bb = b.to_vec();
        bb[0] -= gamma;
        bb[n - 1] -= corner_lo * corner_hi / gamma;
        let inner = Thomas::factor(a, &bb, c)?;
        let mut z = vec![0.0; n];
        z[0] = gamma;
        z[n - 1] = corner_lo;
        inner.solve_in_place(&mut z);
        let denom = 1.0 + z[0] + corner_hi * z[n - 1] / gamma;
        if !(denom.abs() >= PIVOT_FLOOR) {
            return Err(Error::ZeroPivot { row: 0 });
        }
        Ok(Self { inner, z, gamma, corner_hi, denom })
    }

    fn solve_in_place(&self, d: &mut [f64]) {
        let n = d.len();
        self.inner.solve_in_place(d);
        let fact = (d[0] + self.corner_hi * d[n - 1] / self.gamma) / self.denom;
        for (x, z) in d.iter_mut().zip(&self.z) {
            *x -= fact * z;
        }
    }
}

/// One row of a compact scheme: `sum lhs[k].1 * f'_{i+lhs[k].0} = (1/h) sum rhs[k].1 * f_{i+rhs[k].0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CcdRow {
    pub lhs: Vec<(isize, f64)>,
    pub rhs: Vec<(isize, f64)>,
}

fn interior_row(order: SchemeOrder) -> CcdRow {
    match order {
        SchemeOrder::Chd4 => CcdRow {
            lhs: vec![(-1, 0.25), (0, 1.0), (1, 0.25)],
            rhs: vec![(-1, -0.75), (1, 0.75)],
        },
        SchemeOrder::Chd6 => CcdRow {
            lhs: vec![(-1, 1.0 / 3.0), (0, 1.0), (1, 1.0 / 3.0)],
            rhs: vec![(-2, -1.0 / 36.0), (-1, -7.0 / 9.0), (1, 7.0 / 9.0), (2, 1.0 / 36.0)],
        },
    }
}

fn left_closure(order: SchemeOrder) -> CcdRow {
    match order {
        SchemeOrder::Chd4 => CcdRow {
            lhs: vec![(0, 1.0), (1, 3.0)],
            rhs: vec![(0, -17.0 / 6.0), (1, 1.5), (2, 1.5), (3, -1.0 / 6.0)],
        },
        SchemeOrder::Chd6 => CcdRow {
            lhs: vec![(0, 1.0), (1, 5.0)],
            rhs: vec![
                (0, -197.0 / 60.0),
                (1, -5.0 / 12.0),
                (2, 5.0),
                (3, -5.0 / 3.0),
                (4, 5.0 / 12.0),
                (5, -1.0 / 20.0),
            ],
        },
    }
}

fn mirror(row: &CcdRow) -> CcdRow {
    CcdRow {
        lhs: row.lhs.iter().map(|&(o, c)| (-o, c)).collect(),
        rhs: row.rhs.iter().map(|&(o, c)| (-o, -c)).collect(),
    }
}

#[derive(Debug, Clone)]
enum Factors {
    Open(Thomas),
    Cyclic(Cyclic),
}

/// Prefactored compact first-derivative operator for lines of a fixed length.
#[derive(Debug, Clone)]
pub struct CcdOperator {
    len: usize,
    inv_h: f64,
    order: SchemeOrder,
    bc: BoundaryTreatment,
    rows: Vec<CcdRow>,
    factors: Factors,
}

impl CcdOperator {
    pub fn new(len: usize, spacing: f64, order: SchemeOrder, bc: BoundaryTreatment) -> Result<Self> {
        if !(spacing > 0.0) {
            return Err(Error::NonPositive("spacing"));
        }
        let min = match bc {
            BoundaryTreatment::Periodic => 5,
            BoundaryTreatment::OneSided => order.min_one_sided_len(),
        };
        if len < min {
            return Err(Error::LineTooShort { len, min });
        }
        let interior = interior_row(order);
        let rows: Vec<CcdRow> = match bc {
            BoundaryTreatment::Periodic => vec![interior; len],
            BoundaryTreatment::OneSided => {
                let left = left_closure(order);
                let right = mirror(&left);
                // CCD6 reaches two nodes out, so the second row also takes the one-sided closure.
                let closed = match order {
                    SchemeOrder::Chd4 => 1,
                    SchemeOrder::Chd6 => 2,
                };
                (0..len)
                    .map(|i| {
                        if i < closed {
                            left.clone()
                        } else if i >= len - closed {
                            right.clone()
                        } else {
                            interior.clone()
                        }
                    })
                    .collect()
            }
        };
        let mut a = vec![0.0; len];
        let mut b = vec![0.0; len];
        let mut c = vec![0.0; len];
        for (i, row) in rows.iter().enumerate() {
            for &(o, coef) in &row.lhs {
                match o {
                    -1 => a[i] = coef,
                    0 => b[i] = coef,
                    1 => c[i] = coef,
                    _ => unreachable!("compact rows are tridiagonal"),
                }
            }
        }
        let factors = match bc {
            BoundaryTreatment::Periodic => Factors::Cyclic(Cyclic::factor(&a, &b, &c, c[len - 1], a[0])?),
            BoundaryTreatment::OneSided => Factors::Open(Thomas::factor(&a, &b, &c)?),
        };
        Ok(Self { len, inv_h: 1.0 / spacing, order, bc, rows, factors })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn order(&self) -> SchemeOrder {
        self.order
    }

    pub fn boundary(&self) -> BoundaryTreatment {
        self.bc
    }

    /// The scheme rows, one per node, for inspection and certification.
    pub fn rows(&self) -> &[CcdRow] {
        &self.rows
    }

    /// Writes the derivative of `values` into `out`.
    pub fn apply(&self, values: &[f64], out: &mut [f64]) {
        debug_assert_eq!(values.len(), self.len);
        debug_assert_eq!(out.len(), self.len);
        let n = self.len as isize;
        for (i, row) in self.rows.iter().enumerate() {
            let mut s = 0.0;
            for &(o, coef) in &row.rhs {
                let k = i as isize + o;
                let k = if self.bc == BoundaryTreatment::Periodic { k.rem_euclid(n) } else { k };
                s += coef * values[k as usize];
            }
            out[i] = s * self.inv_h;
        }
        match &self.factors {
            Factors::Open(t) => t.solve_in_place(out),
            Factors::Cyclic(c) => c.solve_in_place(out),
        }
    }
}

/// Nodal first derivatives of one line of samples.
pub fn ccd_first_derivative_line(
    values: &[f64],
    spacing: f64,
    order: SchemeOrder,
    bc: BoundaryTreatment,
) -> Result<Vec<f64>> {
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("derivative input"));
    }
    let op = CcdOperator::new(values.len(), spacing, order, bc)?;
    let mut out = vec![0.0; values.len()];
    op.apply(values, &mut out);
    Ok(out)
}

/// Line operators for both axes of a grid, reused across many field derivatives.
///
/// With periodic treatment the last node along each axis duplicates the first; the
/// operator acts on the distinct nodes and copies the result.
#[derive(Debug, Clone)]
pub struct FieldDerivative {
    grid: Grid,
    x: CcdOperator,
    y: CcdOperator,
    bc: BoundaryTreatment,
}

impl FieldDerivative {
    pub fn new(grid: Grid, order: SchemeOrder, bc: BoundaryTreatment) -> Result<Self> {
        let shrink = usize::from(bc == BoundaryTreatment::Periodic);
        Ok(Self {
            grid,
            x: CcdOperator::new(grid.nx + 1 - shrink, grid.dx, order, bc)?,
            y: CcdOperator::new(grid.ny + 1 - shrink, grid.dy, order, bc)?,
            bc,
        })
    }

    pub fn apply(&self, field: &ScalarField, axis: Axis, out: &mut ScalarField) -> Result<()> {
        field.same_grid(out)?;
        if *field.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        let g = self.grid;
        let periodic = self.bc == BoundaryTreatment::Periodic;
        match axis {
            Axis::X => {
                let m = self.x.len();
                for j in 0..=g.ny {
                    let src = &field.row(j)[..m];
                    let dst = out.row_mut(j);
                    self.x.apply(src, &mut dst[..m]);
                    if periodic {
                        dst[m] = dst[0];
                    }
                }
            }
            Axis::Y => {
                let m = self.y.len();
                let mut col = vec![0.0; g.ny + 1];
                let mut d = vec![0.0; g.ny + 1];
                for i in 0..=g.nx {
                    field.column_into(i, &mut col);
                    self.y.apply(&col[..m], &mut d[..m]);
                    if periodic {
                        d[m] = d[0];
                    }
                    out.set_column(i, &d);
                }
            }
        }
        Ok(())
    }
}

/// Derivative of a field along one axis, line by line.
pub fn field_derivative(
    field: &ScalarField,
    axis: Axis,
    order: SchemeOrder,
    bc: BoundaryTreatment,
) -> Result<ScalarField> {
    field.check_finite("derivative input")?;
    let ops = FieldDerivative::new(*field.grid(), order, bc)?;
    let mut out = ScalarField::zeros(*field.grid());
    ops.apply(field, axis, &mut out)?;
    Ok(out)
}

/// Velocity `u = psi_y`, `v = -psi_x` with no-slip walls.
pub fn recover_velocity(psi: &ScalarField, order: SchemeOrder) -> Result<(ScalarField, ScalarField)> {
    let ops = FieldDerivative::new(*psi.grid(), order, BoundaryTreatment::OneSided)?;
    let mut u = ScalarField::zeros(*psi.grid());
    let mut v = ScalarField::zeros(*psi.grid());
    recover_velocity_with(&ops, psi, &mut u, &mut v)?;
    Ok((u, v))
}

pub(crate) fn recover_velocity_with(
    ops: &FieldDerivative,
    psi: &ScalarField,
    u: &mut ScalarField,
    v: &mut ScalarField,
) -> Result<()> {
    ops.apply(psi, Axis::Y, u)?;
    ops.apply(psi, Axis::X, v)?;
    v.values_mut().iter_mut().for_each(|x| *x = -*x);
    zero_walls(u);
    zero_walls(v);
    Ok(())
}

pub(crate) fn zero_walls(f: &mut ScalarField) {
    let g = *f.grid();
    for i in 0..=g.nx {
        f.set(i, 0, 0.0);
        f.set(i, g.ny, 0.0);
    }
    for j in 0..=g.ny {
        f.set(0, j, 0.0);
        f.set(g.nx, j, 0.0);
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::grid::observed_order;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    /// Dense Gaussian elimination with partial pivoting.
    pub(crate) fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
        let n = b.len();
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs())).unwrap();
            a.swap(k, p);
            b.swap(k, p);
            for i in k + 1..n {
                let f = a[i][k] / a[k][k];
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
                b[i] -= f * b[k];
            }
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
            x[i] = (b[i] - s) / a[i][i];
        }
        x
    }

    fn dense_from_bands(lower: &[f64], diag: &[f64], upper: &[f64]) -> Vec<Vec<f64>> {
        let n = diag.len();
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            a[i][i] = diag[i];
            if i > 0 {
                a[i][i - 1] = lower[i - 1];
            }
            if i + 1 < n {
                a[i][i + 1] = upper[i];
            }
        }
        a
    }

    /// Highest monomial degree a row reproduces exactly (on unit spacing).
    fn certified_degree(row: &CcdRow) -> usize {
        let mut degree = 0;
        for k in 0..12i32 {
            let lhs: f64 = row
                .lhs
                .iter()
                .map(|&(o, c)| if k == 0 { 0.0 } else { c * k as f64 * (o as f64).powi(k - 1) })
                .sum();
            let rhs: f64 = row.rhs.iter().map(|&(o, c)| c * (o as f64).powi(k)).sum();
            let scale = 1.0 + row.rhs.iter().map(|&(o, c)| (c * (o as f64).powi(k)).abs()).sum::<f64>();
            if (lhs - rhs).abs() > 1e-12 * scale {
                break;
            }
            degree = k as usize;
        }
        degree
    }

    #[test]
    fn identity_system() {
        let r = vec![1.0, -2.0, 3.5, 4.0];
        let x = solve_tridiagonal(&[0.0; 3], &[1.0; 4], &[0.0; 3], &r).unwrap();
        assert_eq!(x, r);
    }

    #[test]
    fn zero_diagonal_is_a_pivot_error() {
        let e = solve_tridiagonal(&[0.0; 2], &[0.0; 3], &[0.0; 2], &[1.0; 3]);
        assert_eq!(e, Err(Error::ZeroPivot { row: 0 }));
    }

    #[test]
    fn cyclic_with_zero_corners_matches_open_solve() {
        let lower = [0.3, -0.2, 0.1, 0.4];
        let diag = [2.0, 3.0, 2.5, 2.2, 1.9];
        let upper = [0.5, 0.1, -0.7, 0.2];
        let rhs = [1.0, 2.0, -1.0, 0.5, 3.0];
        let a = solve_tridiagonal(&lower, &diag, &upper, &rhs).unwrap();
        let b = solve_cyclic_tridiagonal(&lower, &diag, &upper, 0.0, 0.0, &rhs).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn cyclic_second_difference_matches_dense() {
        // Shifted periodic second difference, nonsingular with constant rhs.
        let n = 8;
        let lower = vec![1.0; n - 1];
        let upper = vec![1.0; n - 1];
        let diag = vec![-2.5; n];
        let rhs = vec![1.0; n];
        let x = solve_cyclic_tridiagonal(&lower, &diag, &upper, 1.0, 1.0, &rhs).unwrap();
        let mut a = dense_from_bands(&lower, &diag, &upper);
        a[0][n - 1] = 1.0;
        a[n - 1][0] = 1.0;
        let y = dense_solve(a, rhs);
        for (p, q) in x.iter().zip(&y) {
            assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn cyclic_rejects_tiny_systems() {
        assert!(matches!(
            solve_cyclic_tridiagonal(&[1.0], &[2.0, 2.0], &[1.0], 1.0, 1.0, &[1.0, 1.0]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn printed_rows_reach_their_nominal_degree() {
        for order in [SchemeOrder::Chd4, SchemeOrder::Chd6] {
            let p = order.nominal() as usize;
            assert_eq!(certified_degree(&interior_row(order)), p);
            assert_eq!(certified_degree(&left_closure(order)), p);
            assert_eq!(certified_degree(&mirror(&left_closure(order))), p);
        }
    }

    #[test]
    fn every_operator_row_is_certified() {
        for order in [SchemeOrder::Chd4, SchemeOrder::Chd6] {
            for bc in [BoundaryTreatment::OneSided, BoundaryTreatment::Periodic] {
                let op = CcdOperator::new(12, 0.1, order, bc).unwrap();
                for row in op.rows() {
                    assert!(certified_degree(row) >= order.nominal() as usize);
                }
            }
        }
    }

    #[test]
    fn operator_matches_dense_solve_of_its_rows() {
        let n = 11;
        let h = 0.13;
        let f: Vec<f64> = (0..n).map(|i| (0.7 * i as f64).sin() + 0.1 * i as f64).collect();
        for order in [SchemeOrder::Chd4, SchemeOrder::Chd6] {
            let op = CcdOperator::new(n, h, order, BoundaryTreatment::OneSided).unwrap();
            let mut a = vec![vec![0.0; n]; n];
            let mut b = vec![0.0; n];
            for (i, row) in op.rows().iter().enumerate() {
                for &(o, c) in &row.lhs {
                    a[i][(i as isize + o) as usize] = c;
                }
                b[i] = row.rhs.iter().map(|&(o, c)| c * f[(i as isize + o) as usize]).sum::<f64>() / h;
            }
            let dense = dense_solve(a, b);
            let mut out = vec![0.0; n];
            op.apply(&f, &mut out);
            for (x, y) in out.iter().zip(&dense) {
                assert!((x - y).abs() < 1e-11 * (1.0 + y.abs()));
            }
        }
    }

    #[test]
    fn one_sided_reproduces_quartic() {
        let n = 11;
        let h = 0.1;
        let x: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let f: Vec<f64> = x.iter().map(|x| x.powi(4)).collect();
        for order in [SchemeOrder::Chd4, SchemeOrder::Chd6] {
            let d = ccd_first_derivative_line(&f, h, order, BoundaryTreatment::OneSided).unwrap();
            for (xi, di) in x.iter().zip(&d) {
                assert!((di - 4.0 * xi.powi(3)).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn chd6_one_sided_reproduces_sextic() {
        let n = 13;
        let h = 0.1;
        let x: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();
        let f: Vec<f64> = x.iter().map(|x| x.powi(6) - x.powi(5)).collect();
        let d = ccd_first_derivative_line(&f, h, SchemeOrder::Chd6, BoundaryTreatment::OneSided).unwrap();
        for (xi, di) in x.iter().zip(&d) {
            let exact = 6.0 * xi.powi(5) - 5.0 * xi.powi(4);
            assert!((di - exact).abs() < 1e-10 * (1.0 + exact.abs()));
        }
    }

    #[test]
    fn periodic_orders() {
        for (order, min) in [(SchemeOrder::Chd4, 3.9), (SchemeOrder::Chd6, 5.9)] {
            let errs: Vec<f64> = [16usize, 32, 64]
                .iter()
                .map(|&n| {
                    let h = 2.0 * PI / n as f64;
                    let f: Vec<f64> = (0..n).map(|i| (i as f64 * h).sin()).collect();
                    let d = ccd_first_derivative_line(&f, h, order, BoundaryTreatment::Periodic).unwrap();
                    (0..n).map(|i| (d[i] - (i as f64 * h).cos()).abs()).fold(0.0, f64::max)
                })
                .collect();
            for w in errs.windows(2) {
                let p = observed_order(w[0], 2.0, w[1], 1.0).unwrap();
                assert!(p >= min, "{order}: order {p}");
            }
        }
    }

    #[test]
    fn short_lines_are_rejected() {
        assert_eq!(
            ccd_first_derivative_line(&[0.0; 6], 0.1, SchemeOrder::Chd6, BoundaryTreatment::OneSided),
            Err(Error::LineTooShort { len: 6, min: 7 })
        );
        assert_eq!(
            ccd_first_derivative_line(&[0.0; 4], 0.1, SchemeOrder::Chd4, BoundaryTreatment::OneSided),
            Err(Error::LineTooShort { len: 4, min: 5 })
        );
        assert!(ccd_first_derivative_line(&[0.0; 5], 0.1, SchemeOrder::Chd4, BoundaryTreatment::OneSided).is_ok());
        assert_eq!(
            ccd_first_derivative_line(&[1.0, f64::NAN, 0.0, 0.0, 0.0], 0.1, SchemeOrder::Chd4, BoundaryTreatment::OneSided),
            Err(Error::NonFinite("derivative input"))
        );
    }

    #[test]
    fn field_derivative_of_x_constant_is_zero() {
        let g = Grid::new(10, 12, 1.0, 2.0, 0.0, 0.0).unwrap();
        let f = ScalarField::from_fn(g, |_, y| y * y);
        let d = field_derivative(&f, Axis::X, SchemeOrder::Chd6, BoundaryTreatment::OneSided).unwrap();
        assert!(d.max_abs() < 1e-12);
        let short = Grid::new(10, 6, 1.0, 1.0, 0.0, 0.0).unwrap();
        let f = ScalarField::zeros(short);
        assert!(field_derivative(&f, Axis::Y, SchemeOrder::Chd6, BoundaryTreatment::OneSided).is_ok());
    }

    #[test]
    fn periodic_field_derivative_order() {
        let err = |n: usize| {
            let g = Grid::new(n, n, 2.0 * PI, 2.0 * PI, 0.0, 0.0).unwrap();
            let f = ScalarField::from_fn(g, |x, y| x.sin() * y.cos());
            let d = field_derivative(&f, Axis::X, SchemeOrder::Chd6, BoundaryTreatment::Periodic).unwrap();
            let e = ScalarField::from_fn(g, |x, y| x.cos() * y.cos());
            crate::grid::error_norms(&d, &e).unwrap().linf
        };
        let p = observed_order(err(16), 2.0, err(32), 1.0).unwrap();
        assert!(p >= 6.0, "order {p}");
    }

    #[test]
    fn velocity_of_constant_psi_vanishes() {
        let g = Grid::cavity(10, 20, 2.0).unwrap();
        let (u, v) = recover_velocity(&ScalarField::constant(g, 3.0), SchemeOrder::Chd4).unwrap();
        assert!(u.max_abs() < 1e-12 && v.max_abs() < 1e-12);
    }

    #[test]
    fn velocity_converges_at_fourth_order() {
        let a = 2.0;
        let err = |n: usize| {
            let g = Grid::cavity(n, 2 * n, a).unwrap();
            let psi = ScalarField::from_fn(g, |x, y| (PI * x).sin() * (PI * y / a).sin());
            let (u, _) = recover_velocity(&psi, SchemeOrder::Chd4).unwrap();
            let mut e = 0.0_f64;
            for j in 1..g.ny {
                for i in 1..g.nx {
                    let exact = PI / a * (PI * g.x(i)).sin() * (PI * g.y(j) / a).cos();
                    e = e.max((u.get(i, j) - exact).abs());
                }
            }
            e
        };
        let p = observed_order(err(32), 2.0, err(64), 1.0).unwrap();
        assert!(p >= 3.95, "order {p}");
    }

    proptest! {
        #[test]
        fn tridiagonal_matches_dense(
            n in 2usize..12,
            seed in prop::collection::vec(-1.0f64..1.0, 48),
        ) {
            let lower: Vec<f64> = seed[..n - 1].to_vec();
            let upper: Vec<f64> = seed[12..12 + n - 1].to_vec();
            let diag: Vec<f64> = (0..n).map(|i| 3.0 + seed[24 + i].abs()).collect();
            let rhs: Vec<f64> = seed[36..36 + n].to_vec();
            let x = solve_tridiagonal(&lower, &diag, &upper, &rhs).unwrap();
            let y = dense_solve(dense_from_bands(&lower, &diag, &upper), rhs);
            for (p, q) in x.iter().zip(&y) {
                prop_assert!((p - q).abs() < 1e-12);
            }
        }

        #[test]
        fn derivative_is_linear(
            f in prop::collection::vec(-1.0f64..1.0, 14),
            g in prop::collection::vec(-1.0f64..1.0, 14),
            a in -3.0f64..3.0,
            b in -3.0f64..3.0,
            sixth in any::<bool>(),
            periodic in any::<bool>(),
        ) {
            let order = if sixth { SchemeOrder::Chd6 } else { SchemeOrder::Chd4 };
            let bc = if periodic { BoundaryTreatment::Periodic } else { BoundaryTreatment::OneSided };
            let h = 0.2;
            let combo: Vec<f64> = f.iter().zip(&g).map(|(x, y)| a * x + b * y).collect();
            let df = ccd_first_derivative_line(&f, h, order, bc).unwrap();
            let dg = ccd_first_derivative_line(&g, h, order, bc).unwrap();
            let dc = ccd_first_derivative_line(&combo, h, order, bc).unwrap();
            for i in 0..f.len() {
                let expect = a * df[i] + b * dg[i];
                prop_assert!((dc[i] - expect).abs() <= 1e-12 * (1.0 + expect.abs()) * 100.0);
            }
        }

        #[test]
        fn constants_are_annihilated(c in -100.0f64..100.0, n in 7usize..30, sixth in any::<bool>(), periodic in any::<bool>()) {
            let order = if sixth { SchemeOrder::Chd6 } else { SchemeOrder::Chd4 };
            let bc = if periodic { BoundaryTreatment::Periodic } else { BoundaryTreatment::OneSided };
            let d = ccd_first_derivative_line(&vec![c; n], 1.0 / n as f64, order, bc).unwrap();
            for x in d {
                prop_assert!(x.abs() < 1e-12 * (1.0 + c.abs()) * n as f64);
            }
        }
    }
}
