//! Point-SOR relaxation of the coupled elliptic system
//!
//! ```text
//! g22 x_ξξ − 2 g12 x_ξη + g11 x_ηη + P x_ξ + Q x_η = 0
//! g22 y_ξξ − 2 g12 y_ξη + g11 y_ηη + P y_ξ + Q y_η = 0
//! ```
//!
//! with `P = g22 P11¹ − 2 g12 P12¹ + g11 P22¹` and
//! `Q = g22 P11² − 2 g12 P12² + g11 P22²`.
//!
//! Interior nodes are visited `j`-outer, `i`-inner in ascending order and
//! updated in place, so every coefficient is evaluated on the current,
//! partially updated grid.

use std::io::Write;

use crate::control::{control_field, control_vectors, ControlField, ControlSample};
use crate::error::{MeshError, Result};
use crate::fd::{Field, Tangents};
use crate::grid::{mesh_change_norm, GridSpacing, Point2, StructuredGrid};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Relaxation factor, `0 < omega < 2`.
    pub omega: f64,
    /// Stop once the normalized mesh change drops to this value.
    pub tolerance: f64,
    pub max_iter: usize,
    /// `false` drops the control terms (plain Winslow smoothing).
    pub use_control: bool,
    /// Re-evaluate the control vectors at every node visit instead of
    /// reading the precomputed field. Same values, more work.
    pub recompute_control_each_iter: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            omega: 1.90,
            tolerance: 1.0e-4,
            max_iter: 100,
            use_control: true,
            recompute_control_each_iter: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega < 2.0) {
            return Err(MeshError::Parameter(format!("omega = {} must lie in (0, 2)", self.omega)));
        }
        if self.tolerance.is_nan() || self.tolerance < 0.0 {
            return Err(MeshError::Parameter(format!(
                "tolerance = {} must be nonnegative",
                self.tolerance
            )));
        }
        if self.max_iter == 0 {
            return Err(MeshError::Parameter("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceReport {
    pub iterations: usize,
    /// Mesh change after each sweep, divided by the interior node count.
    pub residuals: Vec<f64>,
    pub converged: bool,
}

impl ConvergenceReport {
    pub fn final_residual(&self) -> Option<f64> {
        self.residuals.last().copied()
    }
}

/// Computes the relaxed value of node `(i, j)` for both coordinates.
#[inline]
fn relaxed(grid: &StructuredGrid, i: usize, j: usize, h: GridSpacing, c: &ControlSample, omega: f64) -> Result<Point2> {
    let tg = Tangents::at(grid, i, j, h);
    let m = tg.metrics();
    let (g11, g22, g12) = (m.g11, m.g22, m.g12);
    let (fx, fy) = (Field::x_of(grid), Field::y_of(grid));
    let x_xieta = fx.xieta(i, j, h);
    let y_xieta = fy.xieta(i, j, h);

    let p = g22 * c.p11[0] - 2.0 * g12 * c.p12[0] + g11 * c.p22[0];
    let q = g22 * c.p11[1] - 2.0 * g12 * c.p12[1] + g11 * c.p22[1];
    let adapt_x = p * tg.x_xi + q * tg.x_eta;
    let adapt_y = p * tg.y_xi + q * tg.y_eta;

    let dxi2 = h.del_xi * h.del_xi;
    let deta2 = h.del_eta * h.del_eta;
    let lhs = 2.0 * (g22 / dxi2 + g11 / deta2);
    if lhs == 0.0 {
        return Err(MeshError::DegenerateCell { i, j });
    }

    let cur = grid.at(i, j);
    let (e, w) = (grid.at(i + 1, j), grid.at(i - 1, j));
    let (n, s) = (grid.at(i, j + 1), grid.at(i, j - 1));
    let rhs_x = g22 * (e.x + w.x) / dxi2 + g11 * (n.x + s.x) / deta2 - 2.0 * g12 * x_xieta + adapt_x;
    let x = cur.x + omega * (rhs_x / lhs - cur.x);

    // Both updates use the metrics taken before this node moved.
    let rhs_y = g22 * (e.y + w.y) / dxi2 + g11 * (n.y + s.y) / deta2 - 2.0 * g12 * y_xieta + adapt_y;
    let y = cur.y + omega * (rhs_y / lhs - cur.y);
    Ok(Point2::new(x, y))
}

fn sweep_with<F>(grid: &mut StructuredGrid, omega: f64, mut control_at: F) -> Result<()>
where
    F: FnMut(usize, usize) -> Result<ControlSample>,
{
    let (nx, ny) = grid.dims();
    let h = grid.spacing();
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            let c = control_at(i, j)?;
            let p = relaxed(grid, i, j, h, &c, omega)?;
            grid.put(i, j, p);
        }
    }
    Ok(())
}

/// One Gauss–Seidel SOR pass over the interior nodes. Boundary nodes are
/// never written.
pub fn sor_sweep(grid: &mut StructuredGrid, control: &ControlField, omega: f64) -> Result<()> {
    if control.dims() != grid.dims() {
        return Err(MeshError::DimensionMismatch {
            left: grid.dims(),
            right: control.dims(),
        });
    }
    sweep_with(grid, omega, |i, j| Ok(*control.at(i, j)))
}

/// Largest change `|rhs/lhs − current|` over interior nodes and both
/// coordinates: the residual of the discrete equations, scaled by the
/// diagonal. Zero exactly when the grid is a fixed point of the sweep.
pub fn equation_residual(grid: &StructuredGrid, control: &ControlField) -> Result<f64> {
    let (nx, ny) = grid.dims();
    let h = grid.spacing();
    let mut worst = 0.0f64;
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            let target = relaxed(grid, i, j, h, control.at(i, j), 1.0)?;
            let cur = grid.at(i, j);
            worst = worst.max((target.x - cur.x).abs()).max((target.y - cur.y).abs());
        }
    }
    Ok(worst)
}

/// Relaxes `physical` until the normalized mesh change between sweeps is
/// at most `cfg.tolerance` or `cfg.max_iter` sweeps have run.
pub fn solve(
    physical: &StructuredGrid,
    param: &StructuredGrid,
    cfg: &SolverConfig,
) -> Result<(StructuredGrid, ConvergenceReport)> {
    cfg.validate()?;
    physical.same_dims(param)?;
    let (nx, ny) = physical.dims();
    let control = if cfg.use_control {
        control_field(param)?
    } else {
        ControlField::zeros(nx, ny)
    };
    let interior = ((nx - 2) * (ny - 2)) as f64;
    let h = physical.spacing();

    let mut grid = physical.clone();
    let mut report = ConvergenceReport::default();
    let mut residual = f64::INFINITY;
    while report.iterations < cfg.max_iter && residual > cfg.tolerance {
        report.iterations += 1;
        let previous = grid.clone();
        if cfg.use_control && cfg.recompute_control_each_iter {
            sweep_with(&mut grid, cfg.omega, |i, j| control_vectors(param, i, j, h))?;
        } else {
            sor_sweep(&mut grid, &control, cfg.omega)?;
        }
        if !grid.all_finite() {
            return Err(MeshError::Divergence {
                iteration: report.iterations,
            });
        }
        residual = mesh_change_norm(&grid, &previous)? / interior;
        report.residuals.push(residual);
    }
    report.converged = residual <= cfg.tolerance;
    Ok((grid, report))
}

/// Writes one `iteration residual` line per sweep.
pub fn residual_log<W: Write>(report: &ConvergenceReport, mut sink: W) -> Result<()> {
    for (k, r) in report.residuals.iter().enumerate() {
        writeln!(sink, "{} {}", k + 1, r)?;
    }
    sink.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{initial_mesh, BoundarySpec, PolylineBoundary};
    use crate::stretching::{parameter_grid, Axis, ClusterSpec};

    fn square(n: usize) -> StructuredGrid {
        let spec = BoundarySpec::Polyline(PolylineBoundary::unit_square(n, n).unwrap());
        initial_mesh(n, n, &spec).unwrap()
    }

    #[test]
    fn uniform_square_is_fixed_point() {
        let g = square(9);
        for omega in [0.5, 1.0, 1.9] {
            let mut s = g.clone();
            sor_sweep(&mut s, &ControlField::zeros(9, 9), omega).unwrap();
            assert_eq!(s, g);
        }
        assert_eq!(equation_residual(&g, &ControlField::zeros(9, 9)).unwrap(), 0.0);
    }

    #[test]
    fn laplace_limit_single_node() {
        // 3×3 unit square with the centre displaced. Neighbours give
        // g11 = g22 = 1 and g12 = 0, so the relaxed target is the
        // 4-neighbour average (0.5, 0.5).
        let mut g = StructuredGrid::new_uniform(3, 3).unwrap();
        g.set_node(1, 1, Point2::new(0.3, 0.8)).unwrap();
        let zero = ControlField::zeros(3, 3);

        let mut gs = g.clone();
        sor_sweep(&mut gs, &zero, 1.0).unwrap();
        assert_eq!(gs.node(1, 1).unwrap(), Point2::new(0.5, 0.5));

        let mut over = g.clone();
        sor_sweep(&mut over, &zero, 1.9).unwrap();
        let p = over.node(1, 1).unwrap();
        assert!((p.x - (0.3 + 1.9 * (0.5 - 0.3))).abs() < 1e-15);
        assert!((p.y - (0.8 + 1.9 * (0.5 - 0.8))).abs() < 1e-15);
    }

    #[test]
    fn degenerate_cell() {
        let g = StructuredGrid::from_coords(3, 3, vec![0.0; 9], vec![0.0; 9]).unwrap();
        let mut s = g.clone();
        assert!(matches!(
            sor_sweep(&mut s, &ControlField::zeros(3, 3), 1.0),
            Err(MeshError::DegenerateCell { i: 1, j: 1 })
        ));
    }

    #[test]
    fn solve_fixed_point_converges_in_one_sweep() {
        let g = square(11);
        let param = StructuredGrid::new_uniform(11, 11).unwrap();
        for omega in [1.0, 1.9] {
            let cfg = SolverConfig { omega, ..Default::default() };
            let (out, report) = solve(&g, &param, &cfg).unwrap();
            assert!(report.converged);
            assert_eq!(report.iterations, 1);
            assert!(report.residuals[0] <= 1e-15);
            assert!(out.max_abs_diff(&g).unwrap() <= 1e-15);
        }
    }

    fn circle(n: usize) -> StructuredGrid {
        initial_mesh(n, n, &BoundarySpec::circle(1.0).unwrap()).unwrap()
    }

    #[test]
    fn circle_converges_with_defaults() {
        let g = circle(33);
        let param = StructuredGrid::new_uniform(33, 33).unwrap();
        let (out, report) = solve(&g, &param, &SolverConfig::default()).unwrap();
        assert!(report.converged);
        assert!(report.iterations <= 100);
        assert!(report.final_residual().unwrap() < 1e-4);
        assert_eq!(report.residuals.len(), report.iterations);
        for j in 0..33 {
            for i in 0..33 {
                if g.is_boundary(i, j) {
                    assert_eq!(out.node(i, j).unwrap(), g.node(i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn zero_tolerance_runs_to_cap() {
        let g = circle(9);
        let param = StructuredGrid::new_uniform(9, 9).unwrap();
        let cfg = SolverConfig {
            tolerance: 0.0,
            max_iter: 7,
            ..Default::default()
        };
        let (_, report) = solve(&g, &param, &cfg).unwrap();
        assert_eq!(report.iterations, 7);
        assert!(!report.converged);
    }

    #[test]
    fn deterministic_and_cache_consistent() {
        let g = circle(17);
        let specs = [
            ClusterSpec::two_lines(Axis::X, 0.4, 0.6, 3.0).unwrap(),
            ClusterSpec::two_lines(Axis::Y, 0.4, 0.6, 3.0).unwrap(),
        ];
        let param = parameter_grid(17, 17, &specs).unwrap();
        let cfg = SolverConfig::default();
        let a = solve(&g, &param, &cfg).unwrap();
        let b = solve(&g, &param, &cfg).unwrap();
        assert_eq!(a, b);
        let recompute = SolverConfig {
            recompute_control_each_iter: true,
            ..cfg
        };
        assert_eq!(solve(&g, &param, &recompute).unwrap(), a);
    }

    #[test]
    fn no_control_ignores_parameter_grid() {
        let g = circle(13);
        let cfg = SolverConfig {
            use_control: false,
            ..Default::default()
        };
        let uniform = StructuredGrid::new_uniform(13, 13).unwrap();
        let clustered = parameter_grid(13, 13, &[ClusterSpec::boundary(Axis::X, 0.5, 4.0).unwrap()]).unwrap();
        assert_eq!(solve(&g, &uniform, &cfg).unwrap(), solve(&g, &clustered, &cfg).unwrap());
    }

    #[test]
    fn config_validation() {
        let g = circle(5);
        let p = StructuredGrid::new_uniform(5, 5).unwrap();
        for cfg in [
            SolverConfig { omega: 0.0, ..Default::default() },
            SolverConfig { omega: 2.0, ..Default::default() },
            SolverConfig { tolerance: -1.0, ..Default::default() },
            SolverConfig { max_iter: 0, ..Default::default() },
        ] {
            assert!(matches!(solve(&g, &p, &cfg), Err(MeshError::Parameter(_))));
        }
        let q = StructuredGrid::new_uniform(5, 6).unwrap();
        assert!(matches!(
            solve(&g, &q, &SolverConfig::default()),
            Err(MeshError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn residual_log_format() {
        let mut buf = Vec::new();
        residual_log(&ConvergenceReport::default(), &mut buf).unwrap();
        assert!(buf.is_empty());

        let report = ConvergenceReport {
            iterations: 2,
            residuals: vec![0.5, 0.01],
            converged: true,
        };
        let mut buf = Vec::new();
        residual_log(&report, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1 0.5\n2 0.01\n");
    }

    #[test]
    fn residual_log_sink_failure() {
        struct Broken;
        impl Write for Broken {
            fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
                Err(std::io::Error::other("closed"))
            }
            fn flush(&mut self) -> std::io::Result<()> {
                Ok(())
            }
        }
        let report = ConvergenceReport {
            iterations: 1,
            residuals: vec![1.0],
            converged: false,
        };
        assert!(matches!(residual_log(&report, Broken), Err(MeshError::Io(_))));
    }
}
