//! Boundary integral equation for the logarithmic source density.
//!
//! The density on arc k is written sigma_k(t) = phi_k(t) / sqrt(1 - t^2)
//! with phi_k a Chebyshev expansion of degree nu. Collocating the single
//! layer potential at the nu+1 Chebyshev points of each arc, together with
//! the total-mass normalization, gives a (4 nu + 5) x (4 nu + 4) system
//! solved in the least squares sense.

pub mod assemble;
pub mod coefficients;
pub mod solution;

pub use assemble::{assemble_system, CollocationSystem};
pub use coefficients::{
    coefficient_c, collocation_points, constant_mu, CollocationPoints, MAX_QUADRATURE_NODES,
};
pub use solution::SourceDensitySolution;

use crate::error::Error;
use crate::geometry::DomainGeometry;
use crate::Result;

/// Discretization parameters for [`solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmConfig {
    /// Chebyshev degree per arc. At least 4.
    pub nu: usize,
    /// Node-doubling stop threshold for the quadrature-evaluated
    /// coefficients.
    pub quadrature_tol: f64,
}

impl Default for SymmConfig {
    fn default() -> Self {
        SymmConfig {
            nu: 256,
            quadrature_tol: 1e-10,
        }
    }
}

impl SymmConfig {
    pub fn new(nu: usize) -> Self {
        SymmConfig {
            nu,
            ..SymmConfig::default()
        }
    }

    pub fn with_quadrature_tol(mut self, quadrature_tol: f64) -> Self {
        self.quadrature_tol = quadrature_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nu < 4 {
            return Err(Error::Domain(format!(
                "expansion degree nu = {} is below the minimum of 4",
                self.nu
            )));
        }
        if !(self.quadrature_tol.is_finite() && self.quadrature_tol > 0.0) {
            return Err(Error::Domain(format!(
                "quadrature tolerance {} must be finite and positive",
                self.quadrature_tol
            )));
        }
        Ok(())
    }
}

/// Assemble and solve the collocation system for `geom`.
pub fn solve(geom: &DomainGeometry, cfg: &SymmConfig) -> Result<SourceDensitySolution> {
    use faer::linalg::solvers::SolveLstsq;

    let sys = assemble_system(geom, cfg)?;
    let a = faer::Mat::from_fn(sys.nrows, sys.ncols, |i, j| sys.matrix[i * sys.ncols + j]);
    let b = faer::Mat::from_fn(sys.nrows, 1, |i, _| sys.rhs[i]);

    let x = a.qr().solve_lstsq(&b);
    let residual_norm = (&a * &x - &b).norm_l2();
    if !residual_norm.is_finite() {
        return Err(Error::Solver(
            "least squares residual is not finite".to_string(),
        ));
    }

    let np = cfg.nu + 1;
    let mut phi = vec![vec![0.0; np]; 4];
    for (k, arc) in phi.iter_mut().enumerate() {
        for (n, c) in arc.iter_mut().enumerate() {
            let v = x[(k * np + n, 0)];
            if !v.is_finite() {
                return Err(Error::Solver(format!(
                    "non-finite expansion coefficient at arc {k}, order {n}"
                )));
            }
            *c = v;
        }
    }

    Ok(SourceDensitySolution {
        geometry: *geom,
        nu: cfg.nu,
        phi,
        residual_norm,
        quadrature_tol: cfg.quadrature_tol,
    })
}
