//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by atom validation, ensemble construction, solvers,
/// samplers and file parsing.
#[derive(Debug, Error)]
pub enum Error {
    /// An atom failed structural validation (disconnected, duplicate edge, ...).
    #[error("invalid atom: {0}")]
    InvalidAtom(String),

    /// Atom order exceeds the brute-force symmetry cap.
    #[error("atom too large: order {order} exceeds the brute-force cap of {cap}")]
    AtomTooLarge {
        /// Number of vertices of the offending atom.
        order: usize,
        /// Configured cap.
        cap: usize,
    },

    /// A constraint cannot be satisfied by any configuration.
    #[error("infeasible constraint: {0}")]
    Infeasible(String),

    /// A degree specification violates the graphicality condition.
    #[error("degree sequence is not graphical: {0}")]
    NotGraphical(String),

    /// Iterative solver failed to reach the requested tolerance.
    #[error("solver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NonConvergent {
        /// Number of iterations performed.
        iterations: usize,
        /// Largest constraint residual at the last iterate.
        residual: f64,
    },

    /// Truncated series is growing instead of converging.
    #[error("entropy series diverges (last term {last_term:.3e}); use the exact solver instead")]
    SeriesDiverged {
        /// Magnitude of the last evaluated term.
        last_term: f64,
    },

    /// The stub-matching sampler exhausted its restart budget.
    #[error(
        "sampler exhausted {restarts} restarts (observed acceptance estimate {acceptance:.3e})"
    )]
    SamplerExhausted {
        /// Restarts consumed before giving up.
        restarts: u64,
        /// Fraction of attempts that would have been accepted.
        acceptance: f64,
    },

    /// Operands refer to different vertex sets.
    #[error("vertex count mismatch: {left} vs {right}")]
    VertexCountMismatch {
        /// Vertex count of the first operand.
        left: usize,
        /// Vertex count of the second operand.
        right: usize,
    },

    /// Brute-force oracle refused an input above its hard size cap.
    #[error("input too large for exhaustive oracle: {0}")]
    OracleRefusal(String),

    /// Malformed specification file or parameters.
    #[error("spec error: {0}")]
    Spec(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// JSON (de)serialisation failure.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI: 2 spec error, 3 infeasible constraints,
    /// 4 sampler exhaustion, 5 validation failure (assigned by the caller).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Infeasible(_) | Error::NotGraphical(_) => 3,
            Error::SamplerExhausted { .. } => 4,
            _ => 2,
        }
    }
}
