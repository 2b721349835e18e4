//! Control vectors derived from the parameter grid.
//!
//! The parameter grid samples the map `(ξ, η) ↦ (s, t)`. Its Jacobian `T`
//! and second derivatives give three 2-vectors per interior node,
//!
//! ```text
//! P11 = −T⁻¹ (s_ξξ, t_ξξ),  P22 = −T⁻¹ (s_ηη, t_ηη),  P12 = −T⁻¹ (s_ξη, t_ξη),
//! ```
//!
//! which the solver combines with the physical metrics into the source
//! terms that cluster the mesh.

use crate::error::{MeshError, Result};
use crate::fd::{check_interior, Field};
use crate::grid::{GridSpacing, StructuredGrid};

/// `|det T|` below this is treated as a fold in the parameter grid.
pub const SINGULAR_DET: f64 = 1e-14;

/// Jacobian of the parameter map at one node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianT {
    pub s_xi: f64,
    pub s_eta: f64,
    pub t_xi: f64,
    pub t_eta: f64,
}

impl JacobianT {
    pub fn det(&self) -> f64 {
        self.s_xi * self.t_eta - self.t_xi * self.s_eta
    }

    /// Solves `T v = rhs` by the adjugate, returning `−v`.
    fn neg_solve(&self, det: f64, rhs: [f64; 2]) -> [f64; 2] {
        let [a, b] = rhs;
        [
            -(self.t_eta * a - self.s_eta * b) / det,
            -(-self.t_xi * a + self.s_xi * b) / det,
        ]
    }
}

/// The three control vectors at one node; `p12` also stands for `P21`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ControlSample {
    pub p11: [f64; 2],
    pub p22: [f64; 2],
    pub p12: [f64; 2],
}

impl ControlSample {
    pub const ZERO: ControlSample = ControlSample {
        p11: [0.0; 2],
        p22: [0.0; 2],
        p12: [0.0; 2],
    };

    pub fn is_finite(&self) -> bool {
        self.p11.iter().chain(&self.p22).chain(&self.p12).all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.p11.iter().chain(&self.p22).chain(&self.p12).fold(0.0, |m, v| m.max(v.abs()))
    }
}

fn jacobian_unchecked(param: &StructuredGrid, i: usize, j: usize, h: GridSpacing) -> JacobianT {
    let (s, t) = (Field::x_of(param), Field::y_of(param));
    JacobianT {
        s_xi: s.xi(i, j, h),
        s_eta: s.eta(i, j, h),
        t_xi: t.xi(i, j, h),
        t_eta: t.eta(i, j, h),
    }
}

fn nonsingular(tj: &JacobianT, i: usize, j: usize) -> Result<f64> {
    let det = tj.det();
    if det.is_nan() || det.abs() < SINGULAR_DET {
        return Err(MeshError::SingularMap { i, j, det });
    }
    Ok(det)
}

pub fn jacobian_t(param: &StructuredGrid, i: usize, j: usize, h: GridSpacing) -> Result<JacobianT> {
    check_interior(i, j, param.nx(), param.ny())?;
    let tj = jacobian_unchecked(param, i, j, h);
    nonsingular(&tj, i, j)?;
    Ok(tj)
}

pub fn control_vectors(param: &StructuredGrid, i: usize, j: usize, h: GridSpacing) -> Result<ControlSample> {
    let tj = jacobian_t(param, i, j, h)?;
    let det = tj.det();
    let (s, t) = (Field::x_of(param), Field::y_of(param));
    Ok(ControlSample {
        p11: tj.neg_solve(det, [s.xixi(i, j, h), t.xixi(i, j, h)]),
        p22: tj.neg_solve(det, [s.etaeta(i, j, h), t.etaeta(i, j, h)]),
        p12: tj.neg_solve(det, [s.xieta(i, j, h), t.xieta(i, j, h)]),
    })
}

/// Control vectors at every interior node, precomputed once per solve.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlField {
    nx: usize,
    ny: usize,
    samples: Vec<ControlSample>,
}

impl ControlField {
    /// All-zero field; the solver then reduces to the plain Winslow system.
    pub fn zeros(nx: usize, ny: usize) -> Self {
        Self {
            nx,
            ny,
            samples: vec![ControlSample::ZERO; (nx - 2) * (ny - 2)],
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    /// Sample at interior node `(i, j)`; panics on boundary indices.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &ControlSample {
        &self.samples[(i - 1) + (j - 1) * (self.nx - 2)]
    }

    pub fn samples(&self) -> &[ControlSample] {
        &self.samples
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, s| m.max(s.max_abs()))
    }
}

pub fn control_field(param: &StructuredGrid) -> Result<ControlField> {
    let (nx, ny) = param.dims();
    let h = param.spacing();
    let mut samples = Vec::with_capacity((nx - 2) * (ny - 2));
    for j in 1..ny - 1 {
        for i in 1..nx - 1 {
            samples.push(control_vectors(param, i, j, h)?);
        }
    }
    Ok(ControlField { nx, ny, samples })
}
