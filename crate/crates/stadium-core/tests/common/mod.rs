//! Shared helper for the integration tests: a self-contained adaptive
//! Simpson rule, used as the independent oracle against the production
//! quadrature and closed-form paths.

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute
/// tolerance `tol`. The integrand must be finite everywhere it is
/// sampled, including the endpoints.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }

    #[allow(clippy::too_many_arguments)]
    fn split(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        split(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + split(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }

    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    split(f, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 48)
}

#[allow(dead_code)]
pub fn assert_close(actual: f64, expected: f64, tol: f64, what: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{what}: {actual} vs {expected} (diff {:.3e}, tol {tol:.3e})",
        (actual - expected).abs()
    );
}

/// Oracle for the self-block kernel coefficients, shared by the oracle
/// suite and the acceptance gate. With t = cos(theta) the Chebyshev
/// weight cancels and
///
///   C = Int_0^pi cos(n theta) ln|zeta_j(tau_m) - zeta_j(cos theta)| d theta.
///
/// The kernel vanishes linearly at theta = alpha. Splitting off
/// cos(n alpha) ln|theta - alpha| leaves a continuous integrand
/// (evaluated in cancellation-free product form), and the split-off part
/// integrates in closed form:
///
///   Int_0^pi ln|theta - alpha| d theta
///       = alpha ln alpha + (pi - alpha) ln(pi - alpha) - pi.
#[allow(dead_code)]
pub fn self_coefficient_oracle(
    geom: &stadium_core::DomainGeometry,
    arc: usize,
    alpha: f64,
    n: usize,
) -> f64 {
    use std::f64::consts::PI;

    let l = geom.half_length();
    let nf = n as f64;
    // ln of |kernel| / |theta - alpha|, smooth through theta = alpha.
    let ratio = move |theta: f64| -> f64 {
        let half = 0.5 * (theta - alpha);
        let sinc = if half.abs() < 1e-8 {
            1.0 - half * half / 6.0
        } else {
            half.sin() / half
        };
        match arc {
            // |L cos(alpha) - L cos(theta)| = L |2 sin((theta+alpha)/2) sin((theta-alpha)/2)|
            0 => (l * (0.5 * (theta + alpha)).sin().abs() * sinc.abs()).ln(),
            // |zeta_1(cos alpha) - zeta_1(cos theta)| = 2 |sin((theta-alpha)/2)|
            1 => sinc.abs().ln(),
            _ => unreachable!("self-coefficient oracle covers arcs 0 and 1"),
        }
    };
    let regular = move |theta: f64| -> f64 {
        // cos(n theta) ln|K| - cos(n alpha) ln|theta-alpha|
        //   = cos(n theta) ln(|K|/|theta-alpha|)
        //     - 2 sin(n(theta+alpha)/2) sin(n(theta-alpha)/2) ln|theta-alpha|
        let spread = if theta == alpha {
            0.0
        } else {
            -2.0 * (nf * 0.5 * (theta + alpha)).sin()
                * (nf * 0.5 * (theta - alpha)).sin()
                * (theta - alpha).abs().ln()
        };
        (nf * theta).cos() * ratio(theta) + spread
    };
    let split_closed =
        (nf * alpha).cos() * (alpha * alpha.ln() + (PI - alpha) * (PI - alpha).ln() - PI);
    // Integrating the two sides of the kink separately keeps the
    // adaptive rule honest about the |x| ln|x| behavior at alpha.
    adaptive_simpson(&regular, 0.0, alpha, 1e-11)
        + adaptive_simpson(&regular, alpha, PI, 1e-11)
        + split_closed
}
