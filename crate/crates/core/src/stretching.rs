//! Parameter-space clustering functions.
//!
//! Each family is a monotone self-map of `[0, 1]` that fixes both ends and
//! compresses node spacing near chosen lines or near the boundary. Applied
//! to one coordinate of the uniform grid, it produces the parameter grid
//! whose derivatives feed the control functions.
//!
//! The piecewise maps are evaluated as a chain of closed-interval tests on
//! the running value, one branch after another, so a value that lands
//! exactly on a knot is re-mapped by the next branch. All branches agree at
//! the knots, so the result does not depend on this.

use std::fmt;
use std::str::FromStr;

use crate::error::{MeshError, Result};
use crate::grid::StructuredGrid;

pub const NEAR_LINE_ALPHA: f64 = 3.0;
/// Strength used inside the Eriksson pieces of the two-line map.
pub const TWO_LINES_ALPHA: f64 = 3.0;
pub const BOUNDARY_ALPHA: f64 = 4.0;

/// Coordinate a clustering acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl FromStr for Axis {
    type Err = MeshError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Axis::X),
            "Y" | "y" => Ok(Axis::Y),
            _ => Err(MeshError::Parameter(format!("unknown axis `{s}`, expected X or Y"))),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "X",
            Axis::Y => "Y",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClusterFamily {
    /// Concentrate nodes on the line `c = eta0`.
    NearLine { eta0: f64, alpha: f64 },
    /// Concentrate nodes on the lines `c = eta1` and `c = eta2`.
    TwoLines { eta1: f64, eta2: f64, alpha: f64 },
    /// Concentrate nodes at `c = 0` and `c = 1`, with the knot at `eta1`.
    Boundary { eta1: f64, alpha: f64 },
    None,
}

/// One clustering step: a family applied to one axis of a parameter grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterSpec {
    pub axis: Axis,
    pub family: ClusterFamily,
}

fn open_unit(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(MeshError::Parameter(format!("{name} = {v} must lie strictly inside (0, 1)")))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(MeshError::Parameter(format!("{name} = {v} must be positive")))
    }
}

impl ClusterSpec {
    pub fn near_line(axis: Axis, eta0: f64, alpha: f64) -> Result<Self> {
        Self::new(axis, ClusterFamily::NearLine { eta0, alpha })
    }

    pub fn two_lines(axis: Axis, eta1: f64, eta2: f64, alpha: f64) -> Result<Self> {
        Self::new(axis, ClusterFamily::TwoLines { eta1, eta2, alpha })
    }

    pub fn boundary(axis: Axis, eta1: f64, alpha: f64) -> Result<Self> {
        Self::new(axis, ClusterFamily::Boundary { eta1, alpha })
    }

    pub fn new(axis: Axis, family: ClusterFamily) -> Result<Self> {
        let spec = Self { axis, family };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        match self.family {
            ClusterFamily::NearLine { eta0, alpha } => {
                open_unit("eta0", eta0)?;
                positive("alpha", alpha)
            }
            ClusterFamily::TwoLines { eta1, eta2, alpha } => {
                open_unit("eta1", eta1)?;
                open_unit("eta2", eta2)?;
                if eta1 >= eta2 {
                    return Err(MeshError::Parameter(format!(
                        "two-line knots out of order: eta1 = {eta1} >= eta2 = {eta2}"
                    )));
                }
                positive("alpha", alpha)
            }
            ClusterFamily::Boundary { eta1, alpha } => {
                open_unit("eta1", eta1)?;
                positive("alpha", alpha)
            }
            ClusterFamily::None => Ok(()),
        }
    }

    /// The scalar map of this family.
    pub fn map(&self, c: f64) -> f64 {
        match self.family {
            ClusterFamily::NearLine { eta0, alpha } => near_line_map(c, eta0, alpha),
            ClusterFamily::TwoLines { eta1, eta2, alpha } => two_lines_map(c, eta1, eta2, alpha),
            ClusterFamily::Boundary { eta1, alpha } => boundary_map(c, eta1, alpha),
            ClusterFamily::None => c,
        }
    }

    /// Remaps the chosen coordinate of every node; the other coordinate is
    /// left untouched.
    pub fn apply(&self, grid: &StructuredGrid) -> Result<StructuredGrid> {
        self.validate()?;
        let mut out = grid.clone();
        let coords = match self.axis {
            Axis::X => out.xs_mut(),
            Axis::Y => out.ys_mut(),
        };
        for c in coords.iter_mut() {
            *c = self.map(*c);
        }
        Ok(out)
    }
}

/// Exponential stretch `h (e^{αη} − 1) / (e^α − 1)`.
pub fn eriksson(eta: f64, alpha: f64, h: f64) -> f64 {
    h * (((alpha * eta).exp() - 1.0) / (alpha.exp() - 1.0))
}

pub fn near_line_map(c: f64, eta0: f64, alpha: f64) -> f64 {
    let ea = alpha.exp();
    let mut v = c;
    if v < eta0 {
        v = eta0 * (ea - (alpha * (1.0 - v / eta0)).exp()) / (ea - 1.0);
    }
    if v > eta0 {
        v = eta0 + (1.0 - eta0) * ((alpha * (v - eta0) / (1.0 - eta0)).exp() - 1.0) / (ea - 1.0);
    }
    v
}

pub fn two_lines_map(c: f64, eta1: f64, eta2: f64, alpha: f64) -> f64 {
    let e = |t: f64| eriksson(t, alpha, 1.0);
    let eta0 = (eta1 + eta2) * 0.5;
    let mut v = c;
    if v <= eta1 && 0.0 <= v {
        v = eta1 * (1.0 - e(1.0 - v / eta1));
    }
    if v >= eta1 && v <= eta0 {
        v = eta1 + (eta0 - eta1) * e((v - eta1) / (eta0 - eta1));
    }
    if v >= eta0 && v <= eta2 {
        v = eta0 + (eta2 - eta0) * (1.0 - e((eta2 - v) / (eta2 - eta0)));
    }
    if v >= eta2 && v <= 1.0 {
        v = eta2 + (1.0 - eta2) * e((v - eta2) / (1.0 - eta2));
    }
    v
}

pub fn boundary_map(c: f64, eta1: f64, alpha: f64) -> f64 {
    let ea = alpha.exp();
    let mut v = c;
    if v <= eta1 && 0.0 <= v {
        v = eta1 * ((alpha * v / eta1).exp() - 1.0) / (ea - 1.0);
    }
    if v >= eta1 && v <= 1.0 {
        v = 1.0 - (1.0 - eta1) * (((alpha * (1.0 - v) / (1.0 - eta1)).exp() - 1.0) / (ea - 1.0));
    }
    v
}

pub fn cluster_near_line(grid: &StructuredGrid, axis: Axis, eta0: f64, alpha: f64) -> Result<StructuredGrid> {
    ClusterSpec::near_line(axis, eta0, alpha)?.apply(grid)
}

pub fn cluster_two_lines(
    grid: &StructuredGrid,
    axis: Axis,
    eta1: f64,
    eta2: f64,
    alpha: f64,
) -> Result<StructuredGrid> {
    ClusterSpec::two_lines(axis, eta1, eta2, alpha)?.apply(grid)
}

pub fn cluster_boundary(grid: &StructuredGrid, axis: Axis, eta1: f64, alpha: f64) -> Result<StructuredGrid> {
    ClusterSpec::boundary(axis, eta1, alpha)?.apply(grid)
}

/// Uniform grid transformed by each clustering in order.
pub fn parameter_grid(nx: usize, ny: usize, clusters: &[ClusterSpec]) -> Result<StructuredGrid> {
    let mut grid = StructuredGrid::new_uniform(nx, ny)?;
    for spec in clusters {
        grid = spec.apply(&grid)?;
    }
    Ok(grid)
}
