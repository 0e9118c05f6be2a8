//! Complete elliptic integral of the first kind for complex modulus,
//! through the arithmetic-geometric mean:
//!
//!   K(k) = pi / (2 * AGM(1, sqrt(1 - k^2))).
//!
//! The AGM square root picks the branch with Re(b/a) >= 0 at every step,
//! which keeps the iteration on the principal value for moduli off the
//! real cut.

use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

/// K(k) for complex modulus k with k^2 != 1.
pub fn complete_elliptic_k(k: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let kp2 = one - k * k;
    assert!(
        kp2.norm() > 0.0,
        "complete_elliptic_k diverges at k^2 = 1 (got k = {k})"
    );
    FRAC_PI_2 / agm(one, kp2.sqrt())
}

/// AGM with the right-half-plane branch choice.
fn agm(mut a: Complex64, mut b: Complex64) -> Complex64 {
    for _ in 0..64 {
        if (a - b).norm() <= 1e-17 * a.norm() {
            break;
        }
        let a_next = 0.5 * (a + b);
        let mut b_next = (a * b).sqrt();
        // Keep Re(b/a) >= 0; on the boundary prefer Im(b/a) >= 0.
        let ratio = b_next / a_next;
        if ratio.re < 0.0 || (ratio.re == 0.0 && ratio.im < 0.0) {
            b_next = -b_next;
        }
        a = a_next;
        b = b_next;
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn real_modulus_values() {
        let k0 = complete_elliptic_k(Complex64::new(0.0, 0.0));
        assert_relative_eq!(k0.re, FRAC_PI_2, epsilon = 1e-15);
        assert_relative_eq!(k0.im, 0.0, epsilon = 1e-15);
        let k_half = complete_elliptic_k(Complex64::new(0.5, 0.0));
        assert_relative_eq!(k_half.re, 1.685_750_354_812_596, epsilon = 1e-14);
        let k_sq2 = complete_elliptic_k(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
        assert_relative_eq!(k_sq2.re, 1.8540746773013719, epsilon = 1e-14);
    }

    #[test]
    fn imaginary_modulus() {
        // K(i) is real.
        let ki = complete_elliptic_k(Complex64::new(0.0, 1.0));
        assert_relative_eq!(ki.re, 1.311_028_777_146_06, epsilon = 1e-13);
        assert!(ki.im.abs() < 1e-15);
    }

    #[test]
    fn small_modulus_series() {
        // K(k) = pi/2 Sum_n ((2n-1)!!/(2n)!!)^2 k^{2n}, here through k^8;
        // the k^10 remainder at k = 0.1 is below 1e-11.
        for &kk in &[0.01, 0.05, 0.1] {
            let k = complete_elliptic_k(Complex64::new(kk, 0.0));
            let series = FRAC_PI_2
                * (1.0
                    + kk * kk / 4.0
                    + 9.0 * kk.powi(4) / 64.0
                    + 25.0 * kk.powi(6) / 256.0
                    + 1225.0 * kk.powi(8) / 16384.0);
            assert_relative_eq!(k.re, series, epsilon = 1e-10);
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for &(re, im) in &[(0.3, 0.4), (0.9, 0.1), (0.2, -1.3), (0.0, 0.7)] {
            let k = Complex64::new(re, im);
            let a = complete_elliptic_k(k.conj());
            let b = complete_elliptic_k(k).conj();
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn unit_circle_moduli_vary_continuously() {
        // k = exp(i p pi) for p in (0, 1): the arg of K moves smoothly from
        // 0- to -pi/2-ish territory and is 0 at p = 1/2 (k = i).
        let mut prev = None;
        for i in 1..40 {
            let p = i as f64 / 40.0;
            let k = Complex64::new((p * PI).cos(), (p * PI).sin());
            let val = complete_elliptic_k(k);
            assert!(val.re.is_finite() && val.im.is_finite());
            if let Some(prev) = prev {
                let step: Complex64 = val - prev;
                assert!(step.norm() < 0.35, "jump at p = {p}: {}", step.norm());
            }
            prev = Some(val);
        }
        let ki = complete_elliptic_k(Complex64::new(0.0, 1.0));
        assert!(ki.im.abs() < 1e-14);
    }
}
