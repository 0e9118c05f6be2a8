//! The collocation matrix entries
//!
//!   C_{jmkn} = integral over [-1,1] of T_n(t)/sqrt(1-t^2)
//!              * log|zeta_j(tau_m) - zeta_k(t)| dt,
//!
//! equivalently (t = cos theta) the cosine moments of
//! log|z0 - zeta_k(cos theta)| over [0, pi].
//!
//! Four evaluation paths, keyed by the target arc k and whether k = j:
//!
//! * straight self-arcs: fully closed form, -(pi/n) T_n(tau_m) and
//!   pi log(scale/2);
//! * dome self-arcs: |zeta_1(cos alpha) - zeta_1(cos theta)| =
//!   2|sin((alpha-theta)/2)|, split into a smooth factor integrated by
//!   Gauss-Legendre and the log|alpha - theta| moments in closed form via
//!   Si/Ci (n >= 1) or Clausen (n = 0);
//! * dome target arcs (k curved, j != k): exact power series in 1/w where
//!   w places the collocation point relative to the dome's unit circle;
//! * straight target arcs (j != k): Gauss-Chebyshev with node doubling,
//!   the integrand being analytic on the arc.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::Error;
use crate::geometry::{ArcKind, DomainGeometry};
use crate::special::chebyshev::chebyshev_t_all;
use crate::special::clausen::{clausen_cl2, zeta_even};
use crate::special::dilog::dilog;
use crate::special::quadrature::{gauss_chebyshev_angles, GaussLegendre};
use crate::special::trig_integrals::{cos_integral, sin_integral};
use crate::Result;

/// Hard cap on quadrature nodes before surfacing a convergence error.
pub const MAX_QUADRATURE_NODES: usize = 1 << 20;

/// Collocation angles alpha_m = (2m+1) pi / (2 nu + 2) and points
/// tau_m = cos(alpha_m), m = 0..=nu, shared by all four arcs.
#[derive(Debug, Clone)]
pub struct CollocationPoints {
    pub angles: Vec<f64>,
    pub points: Vec<f64>,
}

pub fn collocation_points(nu: usize) -> CollocationPoints {
    assert!(nu >= 1, "need at least two collocation points per arc");
    let denom = 2.0 * (nu as f64) + 2.0;
    let angles: Vec<f64> = (0..=nu)
        .map(|m| (2.0 * m as f64 + 1.0) * PI / denom)
        .collect();
    let points = angles.iter().map(|a| a.cos()).collect();
    CollocationPoints { angles, points }
}

/// mu_{jm} = log|zeta_j(tau_m)|.
pub fn constant_mu(geom: &DomainGeometry, nu: usize, j: usize, m: usize) -> Result<f64> {
    check_indices(nu, j, m, 0)?;
    let tau = collocation_points(nu).points[m];
    Ok(geom.arc_point_unchecked(j, tau).norm().ln())
}

/// Single coefficient C_{jmkn}. Computes the whole row (all n) internally,
/// so prefer the row builders when assembling; this entry point serves
/// spot checks and oracle comparisons.
pub fn coefficient_c(
    geom: &DomainGeometry,
    nu: usize,
    j: usize,
    m: usize,
    k: usize,
    n: usize,
    quadrature_tol: f64,
) -> Result<f64> {
    check_indices(nu, j, m, n)?;
    if k > 3 {
        return Err(Error::Domain(format!("arc index {k} out of range 0..=3")));
    }
    let colloc = collocation_points(nu);
    let mut row = vec![0.0; nu + 1];
    if j == k {
        match geom.arc_kind(k) {
            ArcKind::Straight => {
                let scale = if k.is_multiple_of(2) { geom.half_length() } else { 1.0 };
                straight_self_row(scale, colloc.points[m], &mut row);
            }
            ArcKind::Curved => {
                let mut eval = DomeSelfEvaluator::new(nu, quadrature_tol);
                eval.row(colloc.angles[m], &mut row)?;
            }
        }
    } else {
        let z0 = geom.arc_point_unchecked(j, colloc.points[m]);
        match geom.arc_kind(k) {
            ArcKind::Curved => {
                let w = dome_frame(geom, k, z0);
                dome_target_row(w, &mut row);
            }
            ArcKind::Straight => {
                let line = straight_arc_line(geom, k);
                straight_target_row(z0, line, nu, quadrature_tol, &mut row)?;
            }
        }
    }
    Ok(row[n])
}

fn check_indices(nu: usize, j: usize, m: usize, n: usize) -> Result<()> {
    if j > 3 {
        return Err(Error::Domain(format!("arc index {j} out of range 0..=3")));
    }
    if m > nu || n > nu {
        return Err(Error::Domain(format!(
            "index out of range: m={m}, n={n} with nu={nu}"
        )));
    }
    Ok(())
}

/// zeta_k(t) = origin + direction * t for the straight arcs.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ArcLine {
    pub origin: Complex64,
    pub direction: Complex64,
}

pub(crate) fn straight_arc_line(geom: &DomainGeometry, k: usize) -> ArcLine {
    debug_assert_eq!(geom.arc_kind(k), ArcKind::Straight);
    let l = geom.half_length();
    match k {
        0 => ArcLine {
            origin: Complex64::new(0.0, -1.0),
            direction: Complex64::new(l, 0.0),
        },
        1 => ArcLine {
            origin: Complex64::new(l, 0.0),
            direction: Complex64::new(0.0, 1.0),
        },
        2 => ArcLine {
            origin: Complex64::new(0.0, 1.0),
            direction: Complex64::new(-l, 0.0),
        },
        _ => ArcLine {
            origin: Complex64::new(-l, 0.0),
            direction: Complex64::new(0.0, -1.0),
        },
    }
}

/// Complex frame for a dome target arc: the dome k is the unit circle
/// around its center c_k traversed as c_k + i e^{-i theta}, so
/// |z0 - zeta_k(cos theta)| = |w - e^{-i theta}| with w = -i (z0 - c_k).
/// For collocation points on the other three arcs |w| > 1 strictly.
pub(crate) fn dome_frame(geom: &DomainGeometry, k: usize, z0: Complex64) -> Complex64 {
    debug_assert_eq!(geom.arc_kind(k), ArcKind::Curved);
    let center = match k {
        1 => Complex64::new(geom.half_length(), 0.0),
        _ => Complex64::new(-geom.half_length(), 0.0),
    };
    // Arc 3 is -zeta_1, i.e. the circle around -L traversed as
    // -L - i e^{-i theta}; absorbing the extra minus into w keeps the
    // single kernel |w - e^{-i theta}|.
    let rot = if k == 1 {
        Complex64::new(0.0, -1.0)
    } else {
        Complex64::new(0.0, 1.0)
    };
    rot * (z0 - center)
}

/// Closed form for straight self-arcs: C_0 = pi log(scale/2) and
/// C_n = -(pi/n) T_n(tau_m), where scale is |d zeta/dt| (L for the
/// horizontal sides, 1 for rectangle vertical ends).
pub(crate) fn straight_self_row(scale: f64, tau_m: f64, out: &mut [f64]) {
    chebyshev_t_all(tau_m, out);
    for (n, v) in out.iter_mut().enumerate().skip(1) {
        *v *= -PI / n as f64;
    }
    out[0] = PI * (scale / 2.0).ln();
}

/// Dome self-arc rows: C_n = R_n + Lambda_n for n >= 1 and the Clausen
/// closed form for n = 0, where
///
///   R_n      = integral of cos(n theta) log[2 sin((alpha-theta)/2)
///              / (alpha-theta)] d theta   (smooth),
///   Lambda_n = integral of cos(n theta) log|alpha - theta| d theta
///            = -(1/n) [cos(n alpha) (Si(n alpha) + Si(n (pi-alpha)))
///                      + sin(n alpha) (Ci(n (pi-alpha)) - Ci(n alpha))].
pub(crate) struct DomeSelfEvaluator {
    nu: usize,
    tol: f64,
    /// Ladder of Gauss-Legendre rules, each double the previous size.
    rules: Vec<GaussLegendre>,
}

impl DomeSelfEvaluator {
    pub fn new(nu: usize, tol: f64) -> Self {
        let base = 2 * (nu + 1) + 64;
        DomeSelfEvaluator {
            nu,
            tol,
            rules: vec![GaussLegendre::new(base), GaussLegendre::new(2 * base)],
        }
    }

    pub fn row(&mut self, alpha: f64, out: &mut [f64]) -> Result<()> {
        out[0] = -clausen_cl2(alpha) - clausen_cl2(PI - alpha);
        if self.nu == 0 {
            return Ok(());
        }
        let mut prev = vec![0.0; self.nu + 1];
        self.regular_part(0, alpha, &mut prev);
        let mut level = 1;
        loop {
            self.regular_part(level, alpha, out);
            let diff = prev
                .iter()
                .zip(out.iter())
                .skip(1)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if diff < self.tol {
                break;
            }
            if 2 * self.rules[level].len() > MAX_QUADRATURE_NODES {
                return Err(Error::QuadratureConvergence {
                    achieved: diff,
                    tolerance: self.tol,
                    nodes: self.rules[level].len(),
                });
            }
            prev.copy_from_slice(out);
            level += 1;
            if level == self.rules.len() {
                let next = 2 * self.rules[level - 1].len();
                self.rules.push(GaussLegendre::new(next));
            }
        }
        for (n, v) in out.iter_mut().enumerate().skip(1) {
            *v += log_moment(alpha, n);
        }
        Ok(())
    }

    /// out[n] = R_n(alpha) for n = 1..=nu using rule `level`; out[0] is
    /// left untouched by callers' convention.
    fn regular_part(&self, level: usize, alpha: f64, out: &mut [f64]) {
        let rule = &self.rules[level];
        for v in out.iter_mut().skip(1) {
            *v = 0.0;
        }
        let half = PI / 2.0;
        for (&x, &w) in rule.nodes().iter().zip(rule.weights()) {
            let theta = half * (x + 1.0);
            let g = w * log_sine_over_linear(alpha - theta);
            // cos(n theta) by recurrence, accumulated over n for this node.
            let c1 = theta.cos();
            let mut c_prev = 1.0;
            let mut c = c1;
            for v in out.iter_mut().skip(1) {
                *v += g * c;
                (c_prev, c) = (c, 2.0 * c1 * c - c_prev);
            }
        }
        for v in out.iter_mut().skip(1) {
            *v *= half;
        }
    }
}

/// log(2 sin(v/2) / v) for |v| < 2 pi, even, analytic, 0 at v = 0.
/// Series in the zeta values for small |v| where the direct form loses
/// digits to cancellation.
pub(crate) fn log_sine_over_linear(v: f64) -> f64 {
    let v = v.abs();
    if v == 0.0 {
        return 0.0;
    }
    if v > 0.5 {
        (2.0 * (v / 2.0).sin() / v).ln()
    } else {
        // log(sin x / x) = -sum_j zeta(2j)/j (x/pi)^(2j), x = v/2.
        let r2 = (v / (2.0 * PI)) * (v / (2.0 * PI));
        let mut sum = 0.0;
        let mut pow = 1.0;
        for j in 1..=20 {
            pow *= r2;
            let term = zeta_even(j) / j as f64 * pow;
            sum -= term;
            if term < 1e-18 {
                break;
            }
        }
        sum
    }
}

/// Lambda_n(alpha): the cosine moments of log|alpha - theta| on [0, pi].
pub(crate) fn log_moment(alpha: f64, n: usize) -> f64 {
    debug_assert!(n >= 1 && alpha > 0.0 && alpha < PI);
    let nf = n as f64;
    let a = nf * alpha;
    let b = nf * (PI - alpha);
    let (s, c) = (nf * alpha).sin_cos();
    -(c * (sin_integral(a) + sin_integral(b)) + s * (cos_integral(b) - cos_integral(a))) / nf
}

/// Exact dome-target rows. With u = 1/w (|u| < 1):
///
///   C_0 = pi log|w| - Im[Li2(u) - Li2(-u)],
///   C_n = -(pi/(2n)) Re(u^n) - Im(P-_n - P+_n)/n,
///
/// where P-_n = u^n atanh(u) - Q_n with Q_n the finite odd partial sum,
/// and P+_n = sum over j >= 1 of opposite parity of u^j/(j+n), produced by
/// a stable backward recurrence seeded at n = nu+1, nu+2.
pub(crate) fn dome_target_row(w: Complex64, out: &mut [f64]) {
    let nu = out.len() - 1;
    let u = w.inv();
    debug_assert!(u.norm() < 1.0, "collocation point inside the dome circle");
    out[0] = PI * w.norm().ln() - (dilog(u) - dilog(-u)).im;
    if nu == 0 {
        return;
    }
    let one = Complex64::new(1.0, 0.0);
    let atanh_u = 0.5 * ((one + u).ln() - (one - u).ln());
    // Backward recurrence tau_n = u^{j0}/(j0+n) + u^2 tau_{n+2}, with j0
    // the smallest index of parity opposite to n.
    let u2 = u * u;
    let mut tau = vec![Complex64::new(0.0, 0.0); nu + 3];
    tau[nu + 1] = tail_sum(u, atanh_u, nu + 1);
    tau[nu + 2] = tail_sum(u, atanh_u, nu + 2);
    for n in (1..=nu).rev() {
        let j0 = if n.is_multiple_of(2) { 1.0 } else { 2.0 };
        let lead = if n.is_multiple_of(2) { u } else { u2 };
        tau[n] = lead / (j0 + n as f64) + u2 * tau[n + 2];
    }
    let mut q = Complex64::new(0.0, 0.0); // Q_1 = 0
    let mut upow = u;
    for n in 1..=nu {
        let nf = n as f64;
        let p_minus = upow * atanh_u - q;
        let p_plus = tau[n];
        out[n] = -PI / (2.0 * nf) * upow.re - (p_minus - p_plus).im / nf;
        // Q_{n+1} = u Q_n + (u/n for odd n).
        q = u * q;
        if n % 2 == 1 {
            q += u / nf;
        }
        upow *= u;
    }
}

/// tau_N = sum over j >= 1, j + N odd, of u^j/(j+N). Two regimes: when
/// u^{-N} stays bounded the tail equals u^{-N}(atanh u - O_N) with O_N the
/// odd partial sum of atanh; otherwise the direct sum converges in
/// O(1/log(1/|u|)) terms.
fn tail_sum(u: Complex64, atanh_u: Complex64, n: usize) -> Complex64 {
    let log_inv = -u.norm().ln();
    if (n as f64) * log_inv <= 4.0 {
        let mut partial = Complex64::new(0.0, 0.0);
        let u2 = u * u;
        let mut upow = u;
        let mut m = 1;
        while m <= n {
            partial += upow / m as f64;
            upow *= u2;
            m += 2;
        }
        u.powi(-(n as i32)) * (atanh_u - partial)
    } else {
        let j0: usize = if n.is_multiple_of(2) { 1 } else { 2 };
        let u2 = u * u;
        let mut upow = u.powi(j0 as i32);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut j = j0;
        loop {
            acc += upow / (j + n) as f64;
            if upow.norm() < 1e-18 * (j + n) as f64 || j > 40_000_000 {
                break;
            }
            upow *= u2;
            j += 2;
        }
        acc
    }
}

/// Gauss-Chebyshev rows for straight target arcs, with node doubling until
/// two successive levels agree to `tol` in every entry.
///
/// Returns the node count of the accepted level.
pub(crate) fn straight_target_row(
    z0: Complex64,
    line: ArcLine,
    nu: usize,
    tol: f64,
    out: &mut [f64],
) -> Result<usize> {
    let mut m_nodes = (4 * nu).max(64);
    let mut prev = vec![0.0; nu + 1];
    gc_log_moments(z0, line, m_nodes, &mut prev);
    let mut last_diff = f64::INFINITY;
    while 2 * m_nodes <= MAX_QUADRATURE_NODES {
        gc_log_moments(z0, line, 2 * m_nodes, out);
        let diff = prev
            .iter()
            .zip(out.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if diff < tol {
            return Ok(2 * m_nodes);
        }
        last_diff = diff;
        prev.copy_from_slice(out);
        m_nodes *= 2;
    }
    Err(Error::QuadratureConvergence {
        achieved: last_diff,
        tolerance: tol,
        nodes: m_nodes,
    })
}

/// out[n] = (pi/M) sum_i cos(n theta_i) log|z0 - line(cos theta_i)|.
fn gc_log_moments(z0: Complex64, line: ArcLine, m_nodes: usize, out: &mut [f64]) {
    for v in out.iter_mut() {
        *v = 0.0;
    }
    for theta in gauss_chebyshev_angles(m_nodes) {
        let t = theta.cos();
        let d = z0 - line.origin - line.direction * t;
        let g = 0.5 * d.norm_sqr().ln();
        let c1 = theta.cos();
        let mut c_prev = 1.0;
        let mut c = c1;
        out[0] += g;
        for v in out.iter_mut().skip(1) {
            *v += g * c;
            (c_prev, c) = (c, 2.0 * c1 * c - c_prev);
        }
    }
    let scale = PI / m_nodes as f64;
    for v in out.iter_mut() {
        *v *= scale;
    }
}
