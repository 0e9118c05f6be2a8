//! Chebyshev polynomials of the first and second kind, by the three-term
//! recurrence. The recurrence is exact at the endpoints and accurate to a
//! few ulps times n in the interior, which is all the solver needs.

/// T_n(x).
pub fn chebyshev_t(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let mut prev = 1.0;
            let mut cur = x;
            for _ in 1..n {
                (prev, cur) = (cur, 2.0 * x * cur - prev);
            }
            cur
        }
    }
}

/// U_n(x).
pub fn chebyshev_u(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0 * x,
        _ => {
            let mut prev = 1.0;
            let mut cur = 2.0 * x;
            for _ in 1..n {
                (prev, cur) = (cur, 2.0 * x * cur - prev);
            }
            cur
        }
    }
}

/// Fill `out[n] = T_n(x)` for n = 0..out.len().
pub fn chebyshev_t_all(x: f64, out: &mut [f64]) {
    if let Some(first) = out.first_mut() {
        *first = 1.0;
    }
    if let Some(second) = out.get_mut(1) {
        *second = x;
    }
    for n in 2..out.len() {
        out[n] = 2.0 * x * out[n - 1] - out[n - 2];
    }
}
