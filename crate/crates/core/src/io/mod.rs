//! Mesh serializers.

mod gmv;
mod matlab;
mod svg;

pub use gmv::{quad_cells, write_gmv, GmvCompat, QuadCell};
pub use matlab::write_matlab;
pub use svg::{write_svg, SvgStyle};
