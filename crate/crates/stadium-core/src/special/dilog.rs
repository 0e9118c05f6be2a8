//! Complex dilogarithm Li2 on the principal branch (cut along [1, inf)).
//!
//! Dispatch: power series near 0, the reflection z -> 1-z near 1, the
//! inversion z -> 1/z far out, one Landen step z -> z/(z-1) when that lands
//! in the series disk, and otherwise direct Gauss-Legendre quadrature of
//! -Log(1 - z t)/t over [0, 1]. The quadrature only triggers for arguments
//! near the unit circle away from 1, where the integrand is analytic with a
//! comfortable margin around the path.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

use super::quadrature::GaussLegendre;

const PI2_6: f64 = PI * PI / 6.0;

/// Li2(z), principal branch.
pub fn dilog(z: Complex64) -> Complex64 {
    dilog_inner(z, 0)
}

fn dilog_inner(z: Complex64, depth: usize) -> Complex64 {
    assert!(depth <= 4, "dilog transformation chain failed to terminate");
    let one = Complex64::new(1.0, 0.0);
    if z.norm_sqr() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    if (one - z).norm_sqr() == 0.0 {
        return Complex64::new(PI2_6, 0.0);
    }
    if z.norm() <= 0.5 {
        return series(z);
    }
    if (one - z).norm() <= 0.5 {
        return PI2_6 - z.ln() * (one - z).ln() - series(one - z);
    }
    if z.norm() >= 1.5 {
        let log_neg = (-z).ln();
        return -PI2_6 - 0.5 * log_neg * log_neg - dilog_inner(z.inv(), depth + 1);
    }
    let landen = z / (z - one);
    if landen.norm() <= 0.5 {
        let log1m = (one - z).ln();
        return -series(landen) - 0.5 * log1m * log1m;
    }
    integral_fallback(z)
}

/// Plain series, callers guarantee |z| <= 0.5.
fn series(z: Complex64) -> Complex64 {
    let mut sum = z;
    let mut zk = z;
    for k in 2..200u32 {
        zk *= z;
        let term = zk / ((k * k) as f64);
        sum += term;
        if term.norm() < 1e-18 {
            break;
        }
    }
    sum
}

/// Li2(z) = - integral over [0,1] of Log(1 - z t)/t dt. Only reached for z
/// near the unit circle with |1 - z| > 0.5 (so the pole at t = 1/z stays
/// well away from the path) after the cheaper transformations have passed.
fn integral_fallback(z: Complex64) -> Complex64 {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    let rule = RULE.get_or_init(|| GaussLegendre::new(200));
    let mid = 0.5;
    let half = 0.5;
    let mut acc = Complex64::new(0.0, 0.0);
    for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
        let t = mid + half * x;
        acc += w * (1.0 - z * t).ln() / t;
    }
    -acc * half
}
