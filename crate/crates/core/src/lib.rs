//! Adaptive, boundary-conforming structured quadrilateral meshes on curved
//! 2D domains.
//!
//! The pipeline is:
//!
//! 1. a uniform computational grid on the unit square,
//! 2. a parameter grid obtained by stretching that grid ([`stretching`]),
//! 3. control vectors from the parameter grid ([`control`]),
//! 4. an initial physical mesh from the boundary and TFI ([`geometry`]),
//! 5. SOR relaxation of the coupled elliptic system ([`solver`]),
//! 6. output in GMV, Matlab or SVG form ([`io`]).
//!
//! [`pipeline::generate`] runs all of it for a [`pipeline::MeshJob`].

pub mod cli;
pub mod control;
pub mod error;
pub mod fd;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod pipeline;
pub mod solver;
pub mod stretching;

pub use error::{MeshError, Result};
pub use grid::{mesh_change_norm, GridSpacing, Point2, StructuredGrid};
