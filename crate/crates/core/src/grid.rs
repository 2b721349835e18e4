//! Logically rectangular grids of 2D nodes.
//!
//! The same type stores the computational grid (uniform unit square), the
//! parameter grid (stretched unit square) and the physical mesh. Nodes are
//! addressed by `(i, j)` with `i` running along ξ and `j` along η; the
//! flattened index is `i + j * nx`, which is also the node order used by the
//! file writers.

use crate::error::{MeshError, Result};

/// Smallest admissible node count per direction; the 9-point stencil needs
/// at least one interior node.
pub const MIN_NODES: usize = 3;

/// A 2D point or vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Self { x, y }
    }
}

/// Uniform computational spacing `(Δξ, Δη)` for an `nx × ny` grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpacing {
    pub del_xi: f64,
    pub del_eta: f64,
}

impl GridSpacing {
    pub fn for_dims(nx: usize, ny: usize) -> Self {
        Self {
            del_xi: 1.0 / (nx as f64 - 1.0),
            del_eta: 1.0 / (ny as f64 - 1.0),
        }
    }
}

/// Node coordinates of a structured `nx × ny` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredGrid {
    nx: usize,
    ny: usize,
    x: Vec<f64>,
    y: Vec<f64>,
}

impl StructuredGrid {
    /// Uniform grid on the unit square: node `(i, j)` sits at
    /// `(i / (nx - 1), j / (ny - 1))`.
    pub fn new_uniform(nx: usize, ny: usize) -> Result<Self> {
        check_dims(nx, ny)?;
        let mut x = Vec::with_capacity(nx * ny);
        let mut y = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                x.push(i as f64 / (nx as f64 - 1.0));
                y.push(j as f64 / (ny as f64 - 1.0));
            }
        }
        Ok(Self { nx, ny, x, y })
    }

    /// Builds a grid from flattened coordinate arrays in `i + j * nx` order.
    pub fn from_coords(nx: usize, ny: usize, x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        check_dims(nx, ny)?;
        if x.len() != nx * ny || y.len() != nx * ny {
            return Err(MeshError::Parameter(format!(
                "expected {} coordinates per axis, got {} and {}",
                nx * ny,
                x.len(),
                y.len()
            )));
        }
        if x.iter().chain(&y).any(|v| !v.is_finite()) {
            return Err(MeshError::Parameter("non-finite coordinate".into()));
        }
        Ok(Self { nx, ny, x, y })
    }

    /// Samples `f(ξ, η)` at the uniform computational nodes.
    pub fn from_fn(nx: usize, ny: usize, f: impl Fn(f64, f64) -> Point2) -> Result<Self> {
        let mut grid = Self::new_uniform(nx, ny)?;
        for k in 0..nx * ny {
            let p = f(grid.x[k], grid.y[k]);
            grid.x[k] = p.x;
            grid.y[k] = p.y;
        }
        Ok(grid)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn spacing(&self) -> GridSpacing {
        GridSpacing::for_dims(self.nx, self.ny)
    }

    #[inline]
    pub fn flatten(&self, i: usize, j: usize) -> usize {
        i + j * self.nx
    }

    #[inline]
    pub fn unflatten(&self, no: usize) -> (usize, usize) {
        (no % self.nx, no / self.nx)
    }

    fn check_index(&self, i: usize, j: usize) -> Result<()> {
        if i >= self.nx || j >= self.ny {
            return Err(MeshError::Index {
                i,
                j,
                nx: self.nx,
                ny: self.ny,
            });
        }
        Ok(())
    }

    pub fn node(&self, i: usize, j: usize) -> Result<Point2> {
        self.check_index(i, j)?;
        Ok(self.at(i, j))
    }

    pub fn set_node(&mut self, i: usize, j: usize, p: Point2) -> Result<()> {
        self.check_index(i, j)?;
        self.put(i, j, p);
        Ok(())
    }

    /// Unchecked read; panics on out-of-range indices.
    #[inline]
    pub(crate) fn at(&self, i: usize, j: usize) -> Point2 {
        let k = self.flatten(i, j);
        Point2::new(self.x[k], self.y[k])
    }

    #[inline]
    pub(crate) fn put(&mut self, i: usize, j: usize, p: Point2) {
        let k = self.flatten(i, j);
        self.x[k] = p.x;
        self.y[k] = p.y;
    }

    /// Flattened abscissae.
    pub fn xs(&self) -> &[f64] {
        &self.x
    }

    /// Flattened ordinates.
    pub fn ys(&self) -> &[f64] {
        &self.y
    }

    pub(crate) fn xs_mut(&mut self) -> &mut [f64] {
        &mut self.x
    }

    pub(crate) fn ys_mut(&mut self) -> &mut [f64] {
        &mut self.y
    }

    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i == self.nx - 1 || j == self.ny - 1
    }

    pub fn same_dims(&self, other: &StructuredGrid) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(MeshError::DimensionMismatch {
                left: self.dims(),
                right: other.dims(),
            });
        }
        Ok(())
    }

    pub fn all_finite(&self) -> bool {
        self.x.iter().chain(&self.y).all(|v| v.is_finite())
    }

    /// Largest coordinate-wise distance to `other` over all nodes.
    pub fn max_abs_diff(&self, other: &StructuredGrid) -> Result<f64> {
        self.same_dims(other)?;
        let dx = self.x.iter().zip(&other.x).map(|(a, b)| (a - b).abs());
        let dy = self.y.iter().zip(&other.y).map(|(a, b)| (a - b).abs());
        Ok(dx.chain(dy).fold(0.0, f64::max))
    }

    /// Nodes of row `j` in increasing `i`.
    pub fn row(&self, j: usize) -> impl Iterator<Item = Point2> + '_ {
        (0..self.nx).map(move |i| self.at(i, j))
    }

    /// Nodes of column `i` in increasing `j`.
    pub fn column(&self, i: usize) -> impl Iterator<Item = Point2> + '_ {
        (0..self.ny).map(move |j| self.at(i, j))
    }
}

fn check_dims(nx: usize, ny: usize) -> Result<()> {
    if nx < MIN_NODES || ny < MIN_NODES {
        return Err(MeshError::InvalidDimension { nx, ny });
    }
    Ok(())
}

/// Root-sum-square of node displacements between two grids, taken over all
/// nodes and not normalized. The solver divides by the interior node count.
pub fn mesh_change_norm(current: &StructuredGrid, previous: &StructuredGrid) -> Result<f64> {
    current.same_dims(previous)?;
    let mut resid = 0.0;
    for k in 0..current.x.len() {
        let dx = current.x[k] - previous.x[k];
        let dy = current.y[k] - previous.y[k];
        resid += dx * dx + dy * dy;
    }
    Ok(resid.sqrt())
}
