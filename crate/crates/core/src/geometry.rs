//! Physical-domain boundaries and the algebraic initial mesh.
//!
//! A boundary is imposed as Dirichlet data on the four sides of a grid and
//! the interior is filled by bilinear transfinite interpolation (TFI).

use std::f64::consts::PI;
use std::io::BufRead;

use crate::error::{MeshError, Result};
use crate::grid::{Point2, StructuredGrid};

/// Absolute tolerance for matching corner points shared by adjacent sides.
pub const CORNER_TOLERANCE: f64 = 1e-12;

/// Description of the four edges of the physical domain.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundarySpec {
    /// Circle of the given radius centred at the origin.
    Circle { radius: f64 },
    Polyline(PolylineBoundary),
}

impl BoundarySpec {
    pub fn circle(radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(MeshError::Parameter(format!(
                "circle radius must be positive, got {radius}"
            )));
        }
        Ok(Self::Circle { radius })
    }
}

/// Four boundary sides given as point lists.
///
/// Orientation: `south` runs ζ 0→1 at η=0, `east` runs η 0→1 at ζ=1,
/// `north` runs ζ 0→1 at η=1 and `west` runs η 0→1 at ζ=0.
#[derive(Debug, Clone, PartialEq)]
pub struct PolylineBoundary {
    pub south: Vec<Point2>,
    pub east: Vec<Point2>,
    pub north: Vec<Point2>,
    pub west: Vec<Point2>,
}

impl PolylineBoundary {
    /// Validates side lengths and corner closure.
    pub fn new(
        south: Vec<Point2>,
        east: Vec<Point2>,
        north: Vec<Point2>,
        west: Vec<Point2>,
    ) -> Result<Self> {
        let b = Self {
            south,
            east,
            north,
            west,
        };
        for (name, side) in b.sides() {
            if side.len() < 2 {
                return Err(MeshError::SideCount {
                    side: name,
                    found: side.len(),
                    expected: 2,
                });
            }
        }
        let first = |s: &[Point2]| s[0];
        let last = |s: &[Point2]| s[s.len() - 1];
        let corners = [
            ("south-west", first(&b.south), first(&b.west)),
            ("south-east", last(&b.south), first(&b.east)),
            ("north-east", last(&b.north), last(&b.east)),
            ("north-west", first(&b.north), last(&b.west)),
        ];
        for (name, p, q) in corners {
            if (p.x - q.x).abs() > CORNER_TOLERANCE || (p.y - q.y).abs() > CORNER_TOLERANCE {
                return Err(MeshError::OpenLoop(format!(
                    "{name} corner differs: ({}, {}) vs ({}, {})",
                    p.x, p.y, q.x, q.y
                )));
            }
        }
        Ok(b)
    }

    /// The unit square sampled uniformly with `nx` points on south/north and
    /// `ny` points on east/west.
    pub fn unit_square(nx: usize, ny: usize) -> Result<Self> {
        let along = |n: usize| -> Vec<f64> { (0..n).map(|k| k as f64 / (n as f64 - 1.0)).collect() };
        let sx = along(nx);
        let sy = along(ny);
        Self::new(
            sx.iter().map(|&s| Point2::new(s, 0.0)).collect(),
            sy.iter().map(|&t| Point2::new(1.0, t)).collect(),
            sx.iter().map(|&s| Point2::new(s, 1.0)).collect(),
            sy.iter().map(|&t| Point2::new(0.0, t)).collect(),
        )
    }

    fn sides(&self) -> [(&'static str, &[Point2]); 4] {
        [
            ("south", &self.south),
            ("east", &self.east),
            ("north", &self.north),
            ("west", &self.west),
        ]
    }

    /// Checks the side point counts against an `nx × ny` target grid.
    pub fn check_dims(&self, nx: usize, ny: usize) -> Result<()> {
        for (name, side) in self.sides() {
            let expected = if name == "south" || name == "north" { nx } else { ny };
            if side.len() != expected {
                return Err(MeshError::SideCount {
                    side: name,
                    found: side.len(),
                    expected,
                });
            }
        }
        Ok(())
    }

    /// Writes the boundary in the `#south/#east/#north/#west` CSV layout.
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> Result<()> {
        for (name, side) in self.sides() {
            writeln!(out, "#{name}")?;
            for p in side {
                writeln!(out, "{},{}", p.x, p.y)?;
            }
        }
        Ok(())
    }
}

/// Image of a point on the boundary of the unit square on a circle of the
/// given radius. Sides are tested in the order η=0, ζ=1, η=1, ζ=0, so the
/// loop is traversed counterclockwise starting from angle 0 at (0,0).
pub fn circle_boundary_point(zeta: f64, eta: f64, radius: f64) -> Result<Point2> {
    let inside = |v: f64| (0.0..=1.0).contains(&v);
    if !inside(zeta) || !inside(eta) {
        return Err(MeshError::NotOnBoundary { zeta, eta });
    }
    let half_pi = PI / 2.0;
    let theta = if eta == 0.0 {
        half_pi * zeta
    } else if zeta == 1.0 {
        half_pi + half_pi * eta
    } else if eta == 1.0 {
        PI + half_pi * (1.0 - zeta)
    } else if zeta == 0.0 {
        3.0 * PI / 2.0 + half_pi * (1.0 - eta)
    } else {
        return Err(MeshError::NotOnBoundary { zeta, eta });
    };
    Ok(Point2::new(radius * theta.cos(), radius * theta.sin()))
}

/// Replaces every boundary node with its boundary image; interior nodes are
/// left as they are.
pub fn apply_boundary(grid: &StructuredGrid, spec: &BoundarySpec) -> Result<StructuredGrid> {
    let (nx, ny) = grid.dims();
    let mut out = grid.clone();
    match spec {
        BoundarySpec::Circle { radius } => {
            for j in 0..ny {
                for i in 0..nx {
                    if out.is_boundary(i, j) {
                        let zeta = i as f64 / (nx as f64 - 1.0);
                        let eta = j as f64 / (ny as f64 - 1.0);
                        out.put(i, j, circle_boundary_point(zeta, eta, *radius)?);
                    }
                }
            }
        }
        BoundarySpec::Polyline(poly) => {
            poly.check_dims(nx, ny).map_err(|e| MeshError::BoundaryMismatch(e.to_string()))?;
            // Last write wins at corners: south, east, north, west in
            // decreasing precedence, as for the circle.
            for j in 0..ny {
                out.put(0, j, poly.west[j]);
            }
            for i in 0..nx {
                out.put(i, ny - 1, poly.north[i]);
            }
            for j in 0..ny {
                out.put(nx - 1, j, poly.east[j]);
            }
            for i in 0..nx {
                out.put(i, 0, poly.south[i]);
            }
        }
    }
    Ok(out)
}

/// Fills the interior by bilinear transfinite interpolation of the boundary
/// nodes. Boundary nodes are copied unchanged.
pub fn tfi_fill(grid: &StructuredGrid) -> StructuredGrid {
    let (nx, ny) = grid.dims();
    let mut out = grid.clone();
    let c00 = grid.at(0, 0);
    let c10 = grid.at(nx - 1, 0);
    let c11 = grid.at(nx - 1, ny - 1);
    let c01 = grid.at(0, ny - 1);
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            let zeta = i as f64 / (nx as f64 - 1.0);
            let eta = j as f64 / (ny as f64 - 1.0);
            let w = grid.at(0, j);
            let e = grid.at(nx - 1, j);
            let s = grid.at(i, 0);
            let n = grid.at(i, ny - 1);
            let blend = |w: f64, e: f64, s: f64, n: f64, c00: f64, c10: f64, c11: f64, c01: f64| {
                (1.0 - zeta) * w + zeta * e + (1.0 - eta) * s + eta * n
                    - ((1.0 - zeta) * (1.0 - eta) * c00
                        + zeta * (1.0 - eta) * c10
                        + zeta * eta * c11
                        + (1.0 - zeta) * eta * c01)
            };
            out.put(
                i,
                j,
                Point2::new(
                    blend(w.x, e.x, s.x, n.x, c00.x, c10.x, c11.x, c01.x),
                    blend(w.y, e.y, s.y, n.y, c00.y, c10.y, c11.y, c01.y),
                ),
            );
        }
    }
    out
}

/// Uniform grid, boundary imposed, interior by TFI.
pub fn initial_mesh(nx: usize, ny: usize, spec: &BoundarySpec) -> Result<StructuredGrid> {
    let uniform = StructuredGrid::new_uniform(nx, ny)?;
    Ok(tfi_fill(&apply_boundary(&uniform, spec)?))
}

/// Reads a boundary in the four-block CSV layout and validates it against an
/// `nx × ny` target grid.
///
/// ```text
/// #south
/// 0,0
/// 1,0
/// #east
/// ...
/// ```
pub fn load_boundary_polyline<R: BufRead>(source: R, nx: usize, ny: usize) -> Result<PolylineBoundary> {
    const ORDER: [&str; 4] = ["south", "east", "north", "west"];
    let mut blocks: [Vec<Point2>; 4] = Default::default();
    let mut current: Option<usize> = None;

    for (lineno, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = lineno + 1;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(name) = text.strip_prefix('#') {
            let name = name.trim();
            let expected = current.map_or(0, |c| c + 1);
            match ORDER.iter().position(|&s| s == name) {
                Some(k) if k == expected => current = Some(k),
                _ => {
                    return Err(MeshError::Parse {
                        line: lineno,
                        message: format!(
                            "expected header `#{}`, found `{text}`",
                            ORDER.get(expected).unwrap_or(&"<end>")
                        ),
                    })
                }
            }
            continue;
        }
        let Some(block) = current else {
            return Err(MeshError::Parse {
                line: lineno,
                message: "coordinates before the `#south` header".into(),
            });
        };
        let mut fields = text.split(',');
        let mut next = |what: &str| -> Result<f64> {
            let field = fields.next().ok_or_else(|| MeshError::Parse {
                line: lineno,
                message: format!("missing {what} coordinate"),
            })?;
            field.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| MeshError::Parse {
                line: lineno,
                message: format!("bad {what} coordinate `{}`", field.trim()),
            })
        };
        let x = next("x")?;
        let y = next("y")?;
        if fields.next().is_some() {
            return Err(MeshError::Parse {
                line: lineno,
                message: "expected exactly two fields".into(),
            });
        }
        blocks[block].push(Point2::new(x, y));
    }
    if current != Some(3) {
        return Err(MeshError::Parse {
            line: 0,
            message: "missing side blocks; need #south, #east, #north, #west".into(),
        });
    }
    let [south, east, north, west] = blocks;
    let poly = PolylineBoundary::new(south, east, north, west)?;
    poly.check_dims(nx, ny)?;
    Ok(poly)
}
