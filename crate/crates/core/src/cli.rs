//! Command-line front end.

use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};

use clap::Parser;
use thiserror::Error;

use crate::error::MeshError;
use crate::geometry::{load_boundary_polyline, BoundarySpec};
use crate::io::{write_gmv, write_matlab, write_svg, GmvCompat, SvgStyle};
use crate::pipeline::{generate, MeshJob};
use crate::solver::{residual_log, ConvergenceReport, SolverConfig};
use crate::stretching::{
    Axis, ClusterFamily, ClusterSpec, BOUNDARY_ALPHA, NEAR_LINE_ALPHA, TWO_LINES_ALPHA,
};

/// Exit status for a run that hit `max_iter` before the tolerance.
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_ERROR: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    /// `--help` / `--version`; the text goes to stdout and the exit is 0.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Run {
        context: String,
        #[source]
        source: MeshError,
    },
}

impl CliError {
    fn run(context: impl Into<String>, source: MeshError) -> Self {
        Self::Run {
            context: context.into(),
            source,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundarySource {
    Circle { radius: f64 },
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Outputs {
    pub gmv: Option<(PathBuf, GmvCompat)>,
    pub matlab: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub residual_log: Option<PathBuf>,
}

impl Outputs {
    fn is_empty(&self) -> bool {
        self.gmv.is_none() && self.matlab.is_none() && self.svg.is_none() && self.residual_log.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub nx: usize,
    pub ny: usize,
    pub boundary: BoundarySource,
    pub clusters: Vec<ClusterSpec>,
    pub solver: SolverConfig,
    pub outputs: Outputs,
    /// SVG of the parameter grid.
    pub emit_param_grid: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(
    name = "ellgrid",
    version,
    about = "Generate adaptive structured quadrilateral meshes by elliptic smoothing",
    after_help = "Cluster specs (repeatable, applied in order):\n  \
        near:AXIS:ETA0[:ALPHA]      cluster at one line (default ALPHA 3)\n  \
        two:AXIS:ETA1:ETA2[:ALPHA]  cluster at two lines (default ALPHA 3)\n  \
        bound:AXIS:ETA1[:ALPHA]     cluster at both ends (default ALPHA 4)\n\
        AXIS is X or Y.\n\n\
        Exit status: 0 converged, 2 not converged (outputs still written), 1 error."
)]
struct Args {
    /// Nodes along ξ.
    #[arg(long, default_value_t = 33)]
    nx: usize,
    /// Nodes along η.
    #[arg(long, default_value_t = 33)]
    ny: usize,
    /// Built-in domain: `circle` or `circle:RADIUS`.
    #[arg(long, conflicts_with = "boundary")]
    domain: Option<String>,
    /// Boundary CSV with #south/#east/#north/#west blocks.
    #[arg(long, value_name = "FILE")]
    boundary: Option<PathBuf>,
    #[arg(long = "cluster", value_name = "SPEC")]
    clusters: Vec<String>,
    #[arg(long, default_value_t = 1.90)]
    omega: f64,
    #[arg(long, default_value_t = 1.0e-4)]
    tol: f64,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    /// Drop the control terms (plain Winslow smoothing).
    #[arg(long)]
    no_control: bool,
    #[arg(long, value_name = "PATH")]
    out_gmv: Option<PathBuf>,
    /// Omit the z block from the GMV file.
    #[arg(long, requires = "out_gmv")]
    gmv_paper_exact: bool,
    #[arg(long, value_name = "PATH")]
    out_matlab: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    out_svg: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    out_residuals: Option<PathBuf>,
    /// SVG of the stretched parameter grid.
    #[arg(long, value_name = "PATH")]
    out_param_svg: Option<PathBuf>,
}

fn parse_f64(field: &str, what: &str, spec: &str) -> Result<f64, CliError> {
    field
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("bad {what} `{field}` in cluster spec `{spec}`")))
}

/// Parses `near:AXIS:eta0[:alpha]`, `two:AXIS:eta1:eta2[:alpha]` or
/// `bound:AXIS:eta1[:alpha]`.
pub fn parse_cluster(spec: &str) -> Result<ClusterSpec, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let usage = |msg: &str| CliError::Usage(format!("{msg} in cluster spec `{spec}`"));
    if parts.len() < 3 {
        return Err(usage("too few fields"));
    }
    let axis: Axis = parts[1]
        .parse()
        .map_err(|_| usage(&format!("unknown axis `{}` (expected X or Y)", parts[1])))?;
    let nums = parts[2..]
        .iter()
        .map(|f| parse_f64(f, "number", spec))
        .collect::<Result<Vec<_>, _>>()?;
    let family = match (parts[0], nums.as_slice()) {
        ("near", [eta0]) => ClusterFamily::NearLine { eta0: *eta0, alpha: NEAR_LINE_ALPHA },
        ("near", [eta0, alpha]) => ClusterFamily::NearLine { eta0: *eta0, alpha: *alpha },
        ("two", [eta1, eta2]) => ClusterFamily::TwoLines { eta1: *eta1, eta2: *eta2, alpha: TWO_LINES_ALPHA },
        ("two", [eta1, eta2, alpha]) => ClusterFamily::TwoLines { eta1: *eta1, eta2: *eta2, alpha: *alpha },
        ("bound", [eta1]) => ClusterFamily::Boundary { eta1: *eta1, alpha: BOUNDARY_ALPHA },
        ("bound", [eta1, alpha]) => ClusterFamily::Boundary { eta1: *eta1, alpha: *alpha },
        ("near" | "two" | "bound", _) => return Err(usage("wrong number of fields")),
        (kind, _) => return Err(usage(&format!("unknown family `{kind}`"))),
    };
    ClusterSpec::new(axis, family).map_err(|e| usage(&e.to_string()))
}

fn parse_domain(text: &str) -> Result<BoundarySource, CliError> {
    let bad = || CliError::Usage(format!("bad --domain `{text}`; expected circle or circle:RADIUS"));
    let mut parts = text.splitn(2, ':');
    if parts.next() != Some("circle") {
        return Err(bad());
    }
    let radius = match parts.next() {
        None => 1.0,
        Some(r) => r.parse::<f64>().map_err(|_| bad())?,
    };
    BoundarySpec::circle(radius).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(BoundarySource::Circle { radius })
}

/// Parses a full argument vector (including the program name).
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = Args::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    })?;

    if args.nx < 3 || args.ny < 3 {
        return Err(CliError::Usage(format!(
            "grid must be at least 3x3, got {}x{}",
            args.nx, args.ny
        )));
    }
    let boundary = match (&args.boundary, &args.domain) {
        (Some(path), _) => BoundarySource::File(path.clone()),
        (None, Some(d)) => parse_domain(d)?,
        (None, None) => BoundarySource::Circle { radius: 1.0 },
    };
    let clusters = args.clusters.iter().map(|s| parse_cluster(s)).collect::<Result<Vec<_>, _>>()?;
    let solver = SolverConfig {
        omega: args.omega,
        tolerance: args.tol,
        max_iter: args.max_iter,
        use_control: !args.no_control,
        recompute_control_each_iter: false,
    };
    solver.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    let compat = if args.gmv_paper_exact {
        GmvCompat::PaperExact
    } else {
        GmvCompat::ValidGmv
    };
    let outputs = Outputs {
        gmv: args.out_gmv.map(|p| (p, compat)),
        matlab: args.out_matlab,
        svg: args.out_svg,
        residual_log: args.out_residuals,
    };
    if outputs.is_empty() && args.out_param_svg.is_none() {
        return Err(CliError::Usage(
            "no output requested; pass at least one of --out-gmv, --out-matlab, --out-svg, --out-residuals, --out-param-svg"
                .into(),
        ));
    }
    Ok(RunConfig {
        nx: args.nx,
        ny: args.ny,
        boundary,
        clusters,
        solver,
        outputs,
        emit_param_grid: args.out_param_svg,
    })
}

/// Result of a completed run; files have been written.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: ConvergenceReport,
    pub written: Vec<PathBuf>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.report.converged {
            0
        } else {
            EXIT_NOT_CONVERGED
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::run(format!("creating {}", path.display()), e.into()))
}

/// Executes the pipeline and writes every requested file.
pub fn run(config: &RunConfig) -> Result<RunOutcome, CliError> {
    let boundary = match &config.boundary {
        BoundarySource::Circle { radius } => {
            BoundarySpec::circle(*radius).map_err(|e| CliError::run("circle domain", e))?
        }
        BoundarySource::File(path) => {
            let ctx = || format!("reading boundary {}", path.display());
            let f = File::open(path).map_err(|e| CliError::run(ctx(), e.into()))?;
            let poly = load_boundary_polyline(BufReader::new(f), config.nx, config.ny)
                .map_err(|e| CliError::run(ctx(), e))?;
            BoundarySpec::Polyline(poly)
        }
    };
    let job = MeshJob::new(config.nx, config.ny, boundary)
        .with_clusters(config.clusters.iter().copied())
        .with_solver(config.solver);
    let out = generate(&job).map_err(|e| CliError::run("generating mesh", e))?;

    let mut written = Vec::new();
    let style = SvgStyle::default();
    let mut emit = |path: &PathBuf, f: &dyn Fn(BufWriter<File>) -> crate::Result<()>| -> Result<(), CliError> {
        let w = create(path)?;
        f(w).map_err(|e| CliError::run(format!("writing {}", path.display()), e))?;
        written.push(path.clone());
        Ok(())
    };
    if let Some((path, compat)) = &config.outputs.gmv {
        emit(path, &|w| write_gmv(&out.mesh, w, *compat))?;
    }
    if let Some(path) = &config.outputs.matlab {
        emit(path, &|w| write_matlab(&out.mesh, w))?;
    }
    if let Some(path) = &config.outputs.svg {
        emit(path, &|w| write_svg(&out.mesh, w, &style))?;
    }
    if let Some(path) = &config.outputs.residual_log {
        emit(path, &|w| residual_log(&out.report, w))?;
    }
    if let Some(path) = &config.emit_param_grid {
        emit(path, &|w| write_svg(&out.parameter, w, &style))?;
    }
    Ok(RunOutcome {
        report: out.report,
        written,
    })
}

/// Parses, runs and maps the result to a process exit status.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(CliError::Info(text)) => {
            print!("{text}");
            return 0;
        }
        Err(e) => {
            eprintln!("{e}");
            return EXIT_ERROR;
        }
    };
    match run(&config) {
        Ok(outcome) => {
            let r = &outcome.report;
            eprintln!(
                "{} after {} iterations, residual {}",
                if r.converged { "converged" } else { "not converged" },
                r.iterations,
                r.final_residual().unwrap_or(0.0)
            );
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
