//! End-to-end mesh generation.

use crate::error::Result;
use crate::geometry::{apply_boundary, tfi_fill, BoundarySpec};
use crate::grid::StructuredGrid;
use crate::solver::{solve, ConvergenceReport, SolverConfig};
use crate::stretching::{parameter_grid, ClusterSpec};

/// Everything needed to produce one mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshJob {
    pub nx: usize,
    pub ny: usize,
    pub boundary: BoundarySpec,
    /// Applied to the uniform grid in order.
    pub clusters: Vec<ClusterSpec>,
    pub solver: SolverConfig,
}

impl MeshJob {
    pub fn new(nx: usize, ny: usize, boundary: BoundarySpec) -> Self {
        Self {
            nx,
            ny,
            boundary,
            clusters: Vec::new(),
            solver: SolverConfig::default(),
        }
    }

    pub fn with_clusters(mut self, clusters: impl IntoIterator<Item = ClusterSpec>) -> Self {
        self.clusters.extend(clusters);
        self
    }

    pub fn with_solver(mut self, solver: SolverConfig) -> Self {
        self.solver = solver;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeshOutput {
    pub parameter: StructuredGrid,
    /// Boundary plus TFI interior, before relaxation.
    pub initial: StructuredGrid,
    pub mesh: StructuredGrid,
    pub report: ConvergenceReport,
}

/// Uniform grid → parameter grid → control field → boundary and TFI →
/// SOR solve.
pub fn generate(job: &MeshJob) -> Result<MeshOutput> {
    let uniform = StructuredGrid::new_uniform(job.nx, job.ny)?;
    let parameter = parameter_grid(job.nx, job.ny, &job.clusters)?;
    let initial = tfi_fill(&apply_boundary(&uniform, &job.boundary)?);
    let (mesh, report) = solve(&initial, &parameter, &job.solver)?;
    Ok(MeshOutput {
        parameter,
        initial,
        mesh,
        report,
    })
}
