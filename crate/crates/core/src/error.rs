use thiserror::Error;

/// Errors raised anywhere in the mesh generation pipeline.
#[derive(Debug, Error)]
pub enum MeshError {
    #[error("invalid grid dimensions {nx}x{ny}: both must be at least 3")]
    InvalidDimension { nx: usize, ny: usize },

    #[error("node index ({i},{j}) out of range for {nx}x{ny} grid")]
    Index { i: usize, j: usize, nx: usize, ny: usize },

    #[error("grid dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("point ({zeta},{eta}) is not on the boundary of the unit square")]
    NotOnBoundary { zeta: f64, eta: f64 },

    #[error("boundary does not fit the grid: {0}")]
    BoundaryMismatch(String),

    #[error("boundary parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("boundary is not closed: {0}")]
    OpenLoop(String),

    #[error("side `{side}` has {found} points, expected {expected}")]
    SideCount {
        side: &'static str,
        found: usize,
        expected: usize,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("stencil at ({i},{j}) needs interior node of a {nx}x{ny} grid")]
    Stencil { i: usize, j: usize, nx: usize, ny: usize },

    #[error("singular parameter map at ({i},{j}): det = {det:e}")]
    SingularMap { i: usize, j: usize, det: f64 },

    #[error("degenerate cell at ({i},{j}): zero diagonal coefficient")]
    DegenerateCell { i: usize, j: usize },

    #[error("solver diverged at iteration {iteration}: non-finite coordinates")]
    Divergence { iteration: usize },

    #[error("cannot render: {0}")]
    Render(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, MeshError>;
