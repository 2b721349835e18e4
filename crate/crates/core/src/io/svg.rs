use std::fmt::Write as _;
use std::io::Write;

use crate::error::{MeshError, Result};
use crate::grid::{Point2, StructuredGrid};

/// Colors and stroke widths (in pixels) for [`write_svg`].
#[derive(Debug, Clone, PartialEq)]
pub struct SvgStyle {
    pub boundary_color: String,
    pub interior_color: String,
    pub boundary_width: f64,
    pub interior_width: f64,
    /// Length of the longer image side in pixels.
    pub size: f64,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            boundary_color: "#d62728".into(),
            interior_color: "#1f3f9f".into(),
            boundary_width: 1.5,
            interior_width: 0.6,
            size: 800.0,
        }
    }
}

const MARGIN: f64 = 0.02;

/// Renders one polyline per grid row and per grid column. The y axis is
/// flipped so the picture has the usual mathematical orientation.
pub fn write_svg<W: Write>(grid: &StructuredGrid, mut out: W, style: &SvgStyle) -> Result<()> {
    let (nx, ny) = grid.dims();
    let (mut lo, mut hi) = (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for (&x, &y) in grid.xs().iter().zip(grid.ys()) {
        lo = Point2::new(lo.x.min(x), lo.y.min(-y));
        hi = Point2::new(hi.x.max(x), hi.y.max(-y));
    }
    let extent = (hi.x - lo.x).max(hi.y - lo.y);
    if !extent.is_finite() || extent <= 0.0 {
        return Err(MeshError::Render("all nodes coincide; bounding box is empty".into()));
    }
    let pad = MARGIN * extent;
    let (vx, vy) = (lo.x - pad, lo.y - pad);
    let (vw, vh) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
    let scale = style.size / vw.max(vh);

    let polyline = |pts: &mut dyn Iterator<Item = Point2>, class: &str, color: &str, width: f64| {
        let mut s = String::new();
        for (k, p) in pts.enumerate() {
            if k > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{},{}", p.x, -p.y);
        }
        format!(
            "  <polyline class=\"{class}\" points=\"{s}\" stroke=\"{color}\" stroke-width=\"{width}\" vector-effect=\"non-scaling-stroke\"/>\n"
        )
    };

    writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>")?;
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0}\" height=\"{:.0}\" viewBox=\"{} {} {} {}\">",
        vw * scale,
        vh * scale,
        vx,
        vy,
        vw,
        vh
    )?;
    writeln!(out, "<g fill=\"none\" stroke-linejoin=\"round\">")?;
    let mut lines = Vec::with_capacity(nx + ny);
    for j in 1..ny - 1 {
        lines.push(polyline(&mut grid.row(j), "interior", &style.interior_color, style.interior_width));
    }
    for i in 1..nx - 1 {
        lines.push(polyline(&mut grid.column(i), "interior", &style.interior_color, style.interior_width));
    }
    for j in [0, ny - 1] {
        lines.push(polyline(&mut grid.row(j), "boundary", &style.boundary_color, style.boundary_width));
    }
    for i in [0, nx - 1] {
        lines.push(polyline(&mut grid.column(i), "boundary", &style.boundary_color, style.boundary_width));
    }
    for l in lines {
        out.write_all(l.as_bytes())?;
    }
    writeln!(out, "</g>")?;
    writeln!(out, "</svg>")?;
    out.flush()?;
    Ok(())
}
