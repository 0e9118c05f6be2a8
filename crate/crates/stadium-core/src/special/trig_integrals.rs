//! Sine and cosine integrals Si(x) and Ci(x).
//!
//! Power series below x = 6; above that, the continued fraction for
//! E1(i x) evaluated by the modified Lentz algorithm:
//!
//!   E1(z) = exp(-z) / (z + 1 - 1^2/(z + 3 - 2^2/(z + 5 - ...)))
//!
//! and E1(i x) = -Ci(x) - i (pi/2 - Si(x)).

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_CUTOFF: f64 = 6.0;

/// Sine integral, the integral of sin(t)/t from 0 to x. Odd in x.
pub fn sin_integral(x: f64) -> f64 {
    assert!(x.is_finite(), "sin_integral: non-finite argument {x}");
    if x < 0.0 {
        return -sin_integral(-x);
    }
    if x < SERIES_CUTOFF {
        si_series(x)
    } else {
        FRAC_PI_2 + e1_of_ix(x).im
    }
}

/// Cosine integral, gamma + ln x + integral of (cos(t)-1)/t from 0 to x.
/// Requires x > 0.
pub fn cos_integral(x: f64) -> f64 {
    assert!(
        x.is_finite() && x > 0.0,
        "cos_integral: argument must be positive, got {x}"
    );
    if x < SERIES_CUTOFF {
        EULER_GAMMA + x.ln() - cin_series(x)
    } else {
        -e1_of_ix(x).re
    }
}

fn si_series(x: f64) -> f64 {
    // Si(x) = sum over k of (-1)^k x^(2k+1) / ((2k+1) (2k+1)!).
    let mut power_term = x; // (-1)^k x^(2k+1) / (2k+1)!
    let mut sum = x;
    let x2 = x * x;
    for k in 1..200 {
        let kf = k as f64;
        power_term *= -x2 / ((2.0 * kf) * (2.0 * kf + 1.0));
        let term = power_term / (2.0 * kf + 1.0);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

fn cin_series(x: f64) -> f64 {
    // Cin(x) = sum over k >= 1 of (-1)^(k+1) x^(2k) / ((2k) (2k)!).
    let x2 = x * x;
    let mut power_term = x2 / 2.0; // (-1)^(k+1) x^(2k) / (2k)!
    let mut sum = power_term / 2.0;
    for k in 2..200 {
        let kf = k as f64;
        power_term *= -x2 / ((2.0 * kf - 1.0) * (2.0 * kf));
        let term = power_term / (2.0 * kf);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

/// E1(i x) for x > 0 by the Lentz continued-fraction evaluation.
fn e1_of_ix(x: f64) -> Complex64 {
    let z = Complex64::new(0.0, x);
    let tiny = Complex64::new(1e-300, 0.0);
    let b0 = z + 1.0;
    let mut f = if b0.norm_sqr() == 0.0 { tiny } else { b0 };
    let mut c = f;
    let mut d = Complex64::new(0.0, 0.0);
    for j in 1..10_000 {
        let a = Complex64::new(-((j * j) as f64), 0.0);
        let b = z + (2 * j + 1) as f64;
        d = b + a * d;
        if d.norm_sqr() == 0.0 {
            d = tiny;
        }
        c = b + a / c;
        if c.norm_sqr() == 0.0 {
            c = tiny;
        }
        d = d.inv();
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    // exp(-i x) / f
    Complex64::new(x.cos(), -x.sin()) / f
}
