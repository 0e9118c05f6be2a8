//! Walk-on-circles estimator of the dome harmonic measure.
//!
//! Each trial jumps the particle from p to a uniform point on the largest
//! circle inscribed at p, until the boundary distance drops to the
//! absorption threshold h; the absorbed point is classified as dome or
//! side. The dome hit fraction estimates the harmonic measure of the two
//! end arcs as seen from the start point.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::geometry::{DomainGeometry, HitClass};
use crate::Result;

/// Hard per-trial step limit; hitting it aborts the run with an error
/// rather than looping forever.
pub const STEP_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    /// Number of independent trials, at least 1.
    pub trials: u64,
    /// Absorption distance, in (0, 0.1).
    pub h: f64,
    /// Base seed; each trial runs on its own substream, so results do
    /// not depend on execution order.
    pub seed: u64,
    /// Start point, strictly interior. The estimate is the harmonic
    /// measure seen from here.
    pub start: Complex64,
}

impl McConfig {
    pub fn new(trials: u64, h: f64, seed: u64) -> Self {
        McConfig {
            trials,
            h,
            seed,
            start: Complex64::ZERO,
        }
    }

    fn validate(&self, geom: &DomainGeometry) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Domain("trial count must be at least 1".to_string()));
        }
        if !(self.h > 0.0 && self.h < 0.1) {
            return Err(Error::Domain(format!(
                "absorption distance h = {} outside (0, 0.1)",
                self.h
            )));
        }
        if geom.inscribed_radius(self.start) <= 0.0 {
            return Err(Error::Domain(format!(
                "start point {} is not strictly interior",
                self.start
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McResult {
    /// Echo of the run parameters.
    pub config: McConfig,
    pub trials: u64,
    /// Trials absorbed on an end arc (either dome).
    pub hits_domes: u64,
    /// Dome hits with Re p > 0 / Re p < 0, for symmetry checks.
    pub hits_right: u64,
    pub hits_left: u64,
    pub p_hat: f64,
    /// Binomial standard error sqrt(p_hat (1 - p_hat) / N).
    pub std_error: f64,
}

impl McResult {
    /// JSON report with the fields N, h, seed, hits, p_hat, std_error.
    pub fn report_json(&self) -> String {
        let v = serde_json::json!({
            "N": self.trials,
            "h": self.config.h,
            "seed": self.config.seed,
            "hits": self.hits_domes,
            "p_hat": self.p_hat,
            "std_error": self.std_error,
        });
        serde_json::to_string_pretty(&v).expect("plain JSON object")
    }
}

/// Run the estimator. Deterministic for fixed (geometry, config),
/// independent of trial execution order.
pub fn run(geom: &DomainGeometry, cfg: &McConfig) -> Result<McResult> {
    cfg.validate(geom)?;
    let mut hits_right = 0u64;
    let mut hits_left = 0u64;
    for trial in 0..cfg.trials {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(trial);
        let end = walk(geom, cfg, &mut rng)?;
        if geom.classify_hit(end) == HitClass::Dome {
            if end.re > 0.0 {
                hits_right += 1;
            } else {
                hits_left += 1;
            }
        }
    }
    let hits_domes = hits_right + hits_left;
    let n = cfg.trials as f64;
    let p_hat = hits_domes as f64 / n;
    let std_error = (p_hat * (1.0 - p_hat) / n).sqrt();
    Ok(McResult {
        config: *cfg,
        trials: cfg.trials,
        hits_domes,
        hits_right,
        hits_left,
        p_hat,
        std_error,
    })
}

fn walk(geom: &DomainGeometry, cfg: &McConfig, rng: &mut ChaCha8Rng) -> Result<Complex64> {
    let mut p = cfg.start;
    for _ in 0..STEP_CAP {
        let r = geom.inscribed_radius(p);
        if r <= cfg.h {
            return Ok(p);
        }
        let angle = 2.0 * PI * rng.random::<f64>();
        let (s, c) = angle.sin_cos();
        p += Complex64::new(r * c, r * s);
    }
    Err(Error::StepCap(STEP_CAP))
}
