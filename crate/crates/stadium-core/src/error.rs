//! Error type shared by all modules.

/// Everything that can go wrong in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid argument or state: out-of-range parameter, point outside the
    /// domain, mismatched solution/geometry pair, malformed input file.
    #[error("domain error: {0}")]
    Domain(String),

    /// A nested quadrature rule hit its node cap before successive
    /// refinements agreed to the requested tolerance.
    #[error(
        "quadrature did not converge: last refinement changed by {achieved:.3e} \
         at {nodes} nodes (tolerance {tolerance:.3e})"
    )]
    QuadratureConvergence {
        achieved: f64,
        tolerance: f64,
        nodes: usize,
    },

    /// The least-squares factorization failed or produced non-finite values.
    #[error("linear solve failed: {0}")]
    Solver(String),

    /// A scalar root finder could not bracket or refine its root.
    #[error("root finding failed: {0}")]
    RootFinding(String),

    /// A random walk exceeded the step cap without being absorbed.
    #[error("walk exceeded the step cap of {0} steps without absorbing")]
    StepCap(usize),

    #[error("serialization error: {0}")]
    Serialization(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
