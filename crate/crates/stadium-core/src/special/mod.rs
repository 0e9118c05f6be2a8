//! Special functions and quadrature rules backing the boundary integrals:
//! Chebyshev polynomials, sine/cosine integrals, the Clausen function,
//! the complex dilogarithm, the complete elliptic integral K, and
//! Gauss-Chebyshev / Gauss-Legendre rules.

pub mod chebyshev;
pub mod clausen;
pub mod dilog;
pub mod elliptic;
pub mod quadrature;
pub mod trig_integrals;

pub use chebyshev::{chebyshev_t, chebyshev_t_all, chebyshev_u};
pub use clausen::clausen_cl2;
pub use dilog::dilog;
pub use elliptic::complete_elliptic_k;
pub use quadrature::{gauss_chebyshev_angles, GaussLegendre};
pub use trig_integrals::{cos_integral, sin_integral};
