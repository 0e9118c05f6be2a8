//! Fixed quadrature rules used by the coefficient and potential integrals.
//!
//! Two rules cover everything: Gauss-Chebyshev (first kind) for integrals
//! against the weight `1/sqrt(1-t^2)`, and Gauss-Legendre for smooth
//! integrals on a finite interval. Error control is by rule doubling at the
//! call sites, so the rules themselves are plain node/weight sets.

/// Angles `theta_i = (2i+1) pi / (2m)` of the m-point Gauss-Chebyshev rule:
///
/// integral of f(t)/sqrt(1-t^2) over [-1,1]  ~=  (pi/m) * sum f(cos theta_i).
///
/// Returned in increasing order of theta (decreasing node t).
pub fn gauss_chebyshev_angles(m: usize) -> Vec<f64> {
    let step = std::f64::consts::PI / m as f64;
    (0..m).map(|i| (i as f64 + 0.5) * step).collect()
}

/// Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes and weights by Newton iteration on the Legendre recurrence.
    pub fn new(m: usize) -> Self {
        assert!(m >= 1, "rule must have at least one node");
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        // Compute the upper half; mirror for exact symmetry.
        for i in 0..m.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= 1e-15 {
                    // One clean-up step after convergence.
                    let (p2, d2) = legendre_with_derivative(m, x);
                    x -= p2 / d2;
                    dp = d2;
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = x;
            weights[i] = w;
            nodes[m - 1 - i] = -x;
            weights[m - 1 - i] = w;
        }
        if m % 2 == 1 {
            nodes[m / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Nodes on [-1, 1], decreasing.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Integrate `f` over [a, b].
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Legendre polynomial P_m and its derivative at x, by forward recurrence.
fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 1..m {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    let dp = (m as f64) * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}
