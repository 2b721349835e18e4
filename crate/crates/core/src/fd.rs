//! Second-order central differences on the 9-point computational stencil,
//! and the metric coefficients built from them.
//!
//! All operators are defined at interior nodes only, `1 ≤ i ≤ nx−2` and
//! `1 ≤ j ≤ ny−2`.

use crate::error::{MeshError, Result};
use crate::grid::{GridSpacing, StructuredGrid};

/// Read-only view of a scalar nodal field stored in `i + j * nx` order.
#[derive(Debug, Clone, Copy)]
pub struct Field<'a> {
    data: &'a [f64],
    nx: usize,
    ny: usize,
}

impl<'a> Field<'a> {
    pub fn new(data: &'a [f64], nx: usize, ny: usize) -> Result<Self> {
        if data.len() != nx * ny {
            return Err(MeshError::Parameter(format!(
                "field has {} values, expected {}x{}",
                data.len(),
                nx,
                ny
            )));
        }
        Ok(Self { data, nx, ny })
    }

    pub fn x_of(grid: &'a StructuredGrid) -> Self {
        Self {
            data: grid.xs(),
            nx: grid.nx(),
            ny: grid.ny(),
        }
    }

    pub fn y_of(grid: &'a StructuredGrid) -> Self {
        Self {
            data: grid.ys(),
            nx: grid.nx(),
            ny: grid.ny(),
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i + j * self.nx]
    }

    fn check_interior(&self, i: usize, j: usize) -> Result<()> {
        check_interior(i, j, self.nx, self.ny)
    }

    #[inline]
    pub(crate) fn xi(&self, i: usize, j: usize, h: GridSpacing) -> f64 {
        (self.at(i + 1, j) - self.at(i - 1, j)) / (2.0 * h.del_xi)
    }

    #[inline]
    pub(crate) fn eta(&self, i: usize, j: usize, h: GridSpacing) -> f64 {
        (self.at(i, j + 1) - self.at(i, j - 1)) / (2.0 * h.del_eta)
    }

    #[inline]
    pub(crate) fn xixi(&self, i: usize, j: usize, h: GridSpacing) -> f64 {
        (self.at(i + 1, j) - 2.0 * self.at(i, j) + self.at(i - 1, j)) / (h.del_xi * h.del_xi)
    }

    #[inline]
    pub(crate) fn etaeta(&self, i: usize, j: usize, h: GridSpacing) -> f64 {
        (self.at(i, j + 1) - 2.0 * self.at(i, j) + self.at(i, j - 1)) / (h.del_eta * h.del_eta)
    }

    #[inline]
    pub(crate) fn xieta(&self, i: usize, j: usize, h: GridSpacing) -> f64 {
        (self.at(i + 1, j + 1) + self.at(i - 1, j - 1) - self.at(i - 1, j + 1) - self.at(i + 1, j - 1))
            / (4.0 * h.del_xi * h.del_eta)
    }
}

pub(crate) fn check_interior(i: usize, j: usize, nx: usize, ny: usize) -> Result<()> {
    if i == 0 || j == 0 || i + 1 >= nx || j + 1 >= ny {
        return Err(MeshError::Stencil { i, j, nx, ny });
    }
    Ok(())
}

pub fn d_xi(f: Field<'_>, i: usize, j: usize, h: GridSpacing) -> Result<f64> {
    f.check_interior(i, j)?;
    Ok(f.xi(i, j, h))
}

pub fn d_eta(f: Field<'_>, i: usize, j: usize, h: GridSpacing) -> Result<f64> {
    f.check_interior(i, j)?;
    Ok(f.eta(i, j, h))
}

pub fn d_xixi(f: Field<'_>, i: usize, j: usize, h: GridSpacing) -> Result<f64> {
    f.check_interior(i, j)?;
    Ok(f.xixi(i, j, h))
}

pub fn d_etaeta(f: Field<'_>, i: usize, j: usize, h: GridSpacing) -> Result<f64> {
    f.check_interior(i, j)?;
    Ok(f.etaeta(i, j, h))
}

pub fn d_xieta(f: Field<'_>, i: usize, j: usize, h: GridSpacing) -> Result<f64> {
    f.check_interior(i, j)?;
    Ok(f.xieta(i, j, h))
}

/// First derivatives of both coordinates at one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tangents {
    pub x_xi: f64,
    pub x_eta: f64,
    pub y_xi: f64,
    pub y_eta: f64,
}

impl Tangents {
    pub(crate) fn at(grid: &StructuredGrid, i: usize, j: usize, h: GridSpacing) -> Self {
        let (fx, fy) = (Field::x_of(grid), Field::y_of(grid));
        Self {
            x_xi: fx.xi(i, j, h),
            x_eta: fx.eta(i, j, h),
            y_xi: fy.xi(i, j, h),
            y_eta: fy.eta(i, j, h),
        }
    }

    /// `x_ξ y_η − y_ξ x_η`.
    pub fn jacobian(&self) -> f64 {
        self.x_xi * self.y_eta - self.y_xi * self.x_eta
    }

    pub fn metrics(&self) -> Metrics {
        Metrics {
            g11: self.x_xi * self.x_xi + self.y_xi * self.y_xi,
            g22: self.x_eta * self.x_eta + self.y_eta * self.y_eta,
            g12: self.x_xi * self.x_eta + self.y_xi * self.y_eta,
        }
    }
}

/// Covariant metric tensor entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metrics {
    pub g11: f64,
    pub g22: f64,
    pub g12: f64,
}

pub fn tangents(grid: &StructuredGrid, i: usize, j: usize, h: GridSpacing) -> Result<Tangents> {
    check_interior(i, j, grid.nx(), grid.ny())?;
    Ok(Tangents::at(grid, i, j, h))
}

pub fn metric_coefficients(grid: &StructuredGrid, i: usize, j: usize, h: GridSpacing) -> Result<Metrics> {
    Ok(tangents(grid, i, j, h)?.metrics())
}

/// Cell Jacobian `x_ξ y_η − y_ξ x_η` at every interior node, in
/// `(i-1) + (j-1) * (nx-2)` order.
pub fn interior_jacobians(grid: &StructuredGrid) -> Vec<f64> {
    let h = grid.spacing();
    let (nx, ny) = grid.dims();
    let mut out = Vec::with_capacity((nx - 2) * (ny - 2));
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            out.push(Tangents::at(grid, i, j, h).jacobian());
        }
    }
    out
}

/// Smallest interior cell Jacobian; a non-positive value flags fold-over.
pub fn min_interior_jacobian(grid: &StructuredGrid) -> f64 {
    interior_jacobians(grid).into_iter().fold(f64::INFINITY, f64::min)
}
