//! Numerical conformal mapping of Bunimovich stadium and rectangle domains
//! onto the unit disk, via a boundary integral equation for the logarithmic
//! source density.
//!
//! The boundary is split into four arcs (bottom, right, top, left). A
//! source density `sigma_k(t) = phi_k(t) / sqrt(1 - t^2)` on each arc is
//! expanded in Chebyshev polynomials and determined by collocation so that
//! the combined logarithmic potential equals `log|z|` on the boundary. From
//! the density one obtains the interior map `f` with `f(0) = 0`, boundary
//! correspondence angles, and harmonic measures of boundary pieces.
//!
//! Two independent cross-checks are included: a walk-on-circles Monte Carlo
//! estimator of the same harmonic measure, and an exact formula for the
//! rectangle end-cap measure in terms of complete elliptic integrals.

pub mod conformal;
pub mod error;
pub mod geometry;
pub mod monte_carlo;
pub mod rect_exact;
pub mod special;
pub mod symm;

pub use conformal::{mobius_halfplane_to_disk, DiskMap, MeshRow, MeshSpec};
pub use error::Error;
pub use geometry::{ArcKind, DomainGeometry, DomainKind, HitClass};
pub use monte_carlo::{McConfig, McResult};
pub use rect_exact::rect_end_measure;
pub use symm::{solve, CollocationSystem, SourceDensitySolution, SymmConfig};

/// Harmonic measure value together with the method that produced it.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct HarmonicMeasureResult {
    /// Measure of the target boundary set, in [0, 1].
    pub p: f64,
    pub method: MeasureMethod,
    /// Standard error (Monte Carlo) or solve tolerance (root finding);
    /// `None` when the method reports no error estimate of its own.
    pub uncertainty: Option<f64>,
}

/// Which estimator produced a harmonic measure value, with its parameters.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "method")]
pub enum MeasureMethod {
    Symm { nu: usize },
    MonteCarlo { n: u64, h: f64, seed: u64 },
    RectExact { tol: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
