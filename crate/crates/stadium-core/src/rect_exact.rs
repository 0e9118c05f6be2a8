//! Exact end-cap harmonic measure of the 2L x 2 rectangle.
//!
//! The combined measure p of the two vertical ends, seen from the
//! center, satisfies acot(L) = p pi/2 + arg K(e^{i p pi}) with K the
//! complete elliptic integral in the k-convention. The left side is the
//! angle subtended by a quarter of the rectangle, the right side tracks
//! where the corners land on the unit circle.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Error;
use crate::special::complete_elliptic_k;
use crate::Result;

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

fn g(l: f64, p: f64) -> f64 {
    let modulus = Complex64::from_polar(1.0, p * PI);
    p * PI / 2.0 + complete_elliptic_k(modulus).arg() - (1.0 / l).atan()
}

/// Combined measure of both vertical ends of the rectangle
/// [-L, L] x [-1, 1] from the center: the unique p in (0,1) with
/// |g(p)| <= tol, by bisection on [1e-9, 1 - 1e-9].
pub fn rect_end_measure(l: f64, tol: f64) -> Result<f64> {
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::Domain(format!(
            "aspect ratio L = {l} must be finite and positive"
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!(
            "root tolerance {tol} must be finite and positive"
        )));
    }

    let mut a = 1e-9;
    let mut b = 1.0 - 1e-9;
    let ga = g(l, a);
    let gb = g(l, b);
    // g is increasing with a single root in (0, 1). For extreme aspect
    // ratios the root sits closer to 0 or 1 than double precision can
    // represent (the arg K term decays like 1/log toward the ends), so
    // both endpoint values share a sign; the measure has saturated and
    // the nearest endpoint is the best representable answer. Clamping
    // also keeps p(L) + p(1/L) = 1 exact for such pairs.
    if ga >= 0.0 && gb >= 0.0 {
        return Ok(a);
    }
    if ga <= 0.0 && gb <= 0.0 {
        return Ok(b);
    }
    if !(ga < 0.0 && gb > 0.0) {
        return Err(Error::RootFinding(format!(
            "sign pattern inconsistent with an increasing g on [{a}, {b}]: \
             g = {ga}, {gb} for L = {l}"
        )));
    }
    loop {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            // Interval exhausted at double precision.
            let gm = g(l, mid);
            if gm.abs() <= tol {
                return Ok(mid);
            }
            return Err(Error::RootFinding(format!(
                "bisection stalled at p = {mid} with |g| = {} > {tol} for L = {l}",
                gm.abs()
            )));
        }
        let gm = g(l, mid);
        if gm.abs() <= tol {
            return Ok(mid);
        }
        if gm < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
}
