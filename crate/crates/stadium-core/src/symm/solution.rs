//! Solved density expansion and its serialized form.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::DomainGeometry;
use crate::Result;

/// Chebyshev expansion of the source density on each arc, together with
/// the solve diagnostics. `phi[k][n]` multiplies T_n(t) in the smooth
/// factor of sigma_k(t) = phi_k(t) / sqrt(1 - t^2).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceDensitySolution {
    #[serde(flatten)]
    pub geometry: DomainGeometry,
    pub nu: usize,
    pub phi: Vec<Vec<f64>>,
    pub residual_norm: f64,
    pub quadrature_tol: f64,
}

impl SourceDensitySolution {
    /// Total source mass of arc k. Because only T_0 survives the weighted
    /// integral, this is pi phi_k0; it equals the harmonic measure of the
    /// arc seen from the origin.
    pub fn arc_mass(&self, k: usize) -> f64 {
        PI * self.phi[k][0]
    }

    /// Combined mass of the two end arcs (right plus left).
    pub fn end_cap_measure(&self) -> f64 {
        self.arc_mass(1) + self.arc_mass(3)
    }

    /// Smooth factor phi_k(t) = sum_n phi_kn T_n(t), by Clenshaw
    /// recurrence.
    pub fn phi_value(&self, k: usize, t: f64) -> f64 {
        let row = &self.phi[k];
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for n in (1..row.len()).rev() {
            let b = row[n] + 2.0 * t * b1 - b2;
            b2 = b1;
            b1 = b;
        }
        row[0] + t * b1 - b2
    }

    /// Full density sigma_k(t), unbounded at the arc ends t = +-1.
    pub fn density(&self, k: usize, t: f64) -> f64 {
        self.phi_value(k, t) / (1.0 - t * t).sqrt()
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let sol: SourceDensitySolution = serde_json::from_str(s)?;
        sol.validate()?;
        Ok(sol)
    }

    pub fn validate(&self) -> Result<()> {
        if self.phi.len() != 4 {
            return Err(Error::Domain(format!(
                "expected 4 coefficient rows, found {}",
                self.phi.len()
            )));
        }
        for (k, row) in self.phi.iter().enumerate() {
            if row.len() != self.nu + 1 {
                return Err(Error::Domain(format!(
                    "arc {k} has {} coefficients, expected nu + 1 = {}",
                    row.len(),
                    self.nu + 1
                )));
            }
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::Domain(format!(
                    "arc {k} contains a non-finite coefficient"
                )));
            }
        }
        if !(self.residual_norm.is_finite() && self.residual_norm >= 0.0) {
            return Err(Error::Domain(format!(
                "residual norm {} is not a nonnegative finite number",
                self.residual_norm
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
