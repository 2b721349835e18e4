use std::io::Write;

use crate::error::Result;
use crate::grid::StructuredGrid;

/// Output flavour for [`write_gmv`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GmvCompat {
    /// Adds the all-zero z-coordinate block GMV readers expect.
    #[default]
    ValidGmv,
    /// x and y blocks only, byte-for-byte the historical layout.
    PaperExact,
}

/// Quadrilateral cell as four 1-based node numbers, counterclockwise in
/// the computational plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadCell(pub [usize; 4]);

/// Cells of the grid in `j`-outer, `i`-inner order.
pub fn quad_cells(nx: usize, ny: usize) -> Vec<QuadCell> {
    let mut cells = Vec::with_capacity((nx - 1) * (ny - 1));
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let n = i + j * nx + 1;
            let n1 = i + (j + 1) * nx + 1;
            cells.push(QuadCell([n, n + 1, n1 + 1, n1]));
        }
    }
    cells
}

/// Writes the grid as a GMV ASCII file.
pub fn write_gmv<W: Write>(grid: &StructuredGrid, mut out: W, compat: GmvCompat) -> Result<()> {
    let (nx, ny) = grid.dims();
    writeln!(out, "gmvinput ascii")?;
    writeln!(out, "nodes  {}", nx * ny)?;
    for x in grid.xs() {
        write!(out, "{x}         ")?;
    }
    write!(out, "\n\n")?;
    for y in grid.ys() {
        write!(out, "{y}        ")?;
    }
    write!(out, "\n\n")?;
    if compat == GmvCompat::ValidGmv {
        for _ in 0..nx * ny {
            write!(out, "0        ")?;
        }
        write!(out, "\n\n")?;
    }
    writeln!(out, "cells  {}", (nx - 1) * (ny - 1))?;
    for QuadCell([a, b, c, d]) in quad_cells(nx, ny) {
        writeln!(out, "quad  4  ")?;
        writeln!(out, "{a}   {b}   {c}  {d}")?;
    }
    writeln!(out, "\n\nendgmv")?;
    out.flush()?;
    Ok(())
}
