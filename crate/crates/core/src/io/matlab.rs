use std::io::Write;

use crate::error::Result;
use crate::grid::StructuredGrid;

/// Writes a Matlab script that stores the node coordinates in `x1`, `y1`
/// and plots the boundary in red and interior grid lines in blue.
pub fn write_matlab<W: Write>(grid: &StructuredGrid, mut out: W) -> Result<()> {
    let (nx, ny) = grid.dims();
    writeln!(out, "clear;")?;
    writeln!(out, "holdon=ishold;")?;
    for j in 0..ny {
        for i in 0..nx {
            let p = grid.at(i, j);
            writeln!(out, "x1({},{})={};   y1({},{})={};", i + 1, j + 1, p.x, i + 1, j + 1, p.y)?;
        }
    }
    writeln!(out, "m =  {nx}")?;
    writeln!(out, "n =  {ny}")?;
    writeln!(out, "plot(x1(1,:),y1(1,:),'r'); hold on")?;
    writeln!(out, "plot(x1(m,:),y1(m,:),'r');")?;
    writeln!(out, "plot(x1(:,1),y1(:,1),'r');")?;
    writeln!(out, "plot(x1(:,n),y1(:,n),'r');")?;
    writeln!(out, "% Plot internal grid lines")?;
    writeln!(out, "for i=2:m-1, plot(x1(i,:),y1(i,:),'b'); end")?;
    writeln!(out, "for j=2:n-1, plot(x1(:,j),y1(:,j),'b'); end")?;
    writeln!(out, "if (~holdon), hold off, end")?;
    writeln!(out, "axis off;")?;
    out.flush()?;
    Ok(())
}
