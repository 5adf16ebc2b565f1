//! Tail analysis for the number of descents in a uniformly random
//! permutation.
//!
//! A permutation of size n has a descent at position k when the entry at k
//! exceeds the entry at k+1. The descent count concentrates hard around
//! (n-1)/2, and this crate computes everything quantitative about how hard,
//! by several mutually cross-validating routes:
//!
//! - [`exact`]: the exact law via the classical descent-count recurrence
//!   in big-integer arithmetic, plus the equivalent unit-interval sum law
//!   by inclusion-exclusion: the ground truth everything else is tested
//!   against.
//! - [`cgf`]: the cumulant generating function `L(t) = log((e^t-1)/t)`,
//!   its derivatives, saddlepoints and the rate function `I(x)` that
//!   governs exponential tail decay.
//! - [`laplace`]: the leading-order factorization of the Laplace
//!   transform with explicit geometric envelopes for its remainder, on the
//!   real line and on complex horizontal lines.
//! - [`bounds`]: the saddlepoint tail approximation with its polynomial
//!   prefactor, two concentration inequalities with fully explicit
//!   constants, Azuma–Hoeffding and Chernoff benchmarks, and the symmetry
//!   transfer for left tails.
//! - [`inversion`]: Fourier/Parseval quadrature oracles that reconstruct
//!   tails and pmf values without ever touching the recurrence.
//! - [`simulate`]: a reproducible Monte-Carlo engine for the martingale
//!   structure of the growing-permutation chain, with finite-sample
//!   diagnostics for the CLT/LIL/functional-CLT statements.
//!
//! Probabilities that underflow binary64 are everywhere carried in log
//! space ([`num_util::LogSpace`], [`num_util::LogPolar`]).
//!
//! # Example
//!
//! ```
//! use descent_tails::{bounds::BoundReport, exact::eulerian_distribution};
//!
//! let dist = eulerian_distribution(30).unwrap();
//! let report = BoundReport::compute(30, 0.7, Some(&dist)).unwrap();
//! let exact = report.exact_f64().unwrap();
//! assert!(exact <= report.cid());
//! assert!(exact <= report.chernoff());
//! ```
//!
//! The `examples/` directory has one runnable program per capability; the
//! `descent-tails` binary wraps the same calls behind a small CLI.

pub mod bounds;
pub mod cgf;
pub mod exact;
pub mod inversion;
pub mod laplace;
pub mod lattice;
pub mod num_util;
pub mod quadrature;
pub mod report;
pub mod simulate;

pub use bounds::BoundReport;
pub use cgf::RatePoint;
pub use exact::ExactDistribution;
pub use inversion::{PmfInversion, TailInversion};
pub use quadrature::QuadratureSpec;
pub use simulate::SimulationSummary;

/// Errors for operations with restricted domains or iterative budgets.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside an operation's stated domain.
    Domain(String),
    /// A distribution was requested above the configured size cap.
    CapExceeded { n: u64, cap: u64 },
    /// Adaptive quadrature exhausted its panel budget before reaching the
    /// requested tolerance.
    NonConvergence {
        panels: usize,
        error: f64,
        tolerance: f64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::CapExceeded { n, cap } => {
                write!(f, "size {n} exceeds the configured cap {cap}")
            }
            Error::NonConvergence {
                panels,
                error,
                tolerance,
            } => write!(
                f,
                "quadrature did not converge: error {error:.3e} > tolerance {tolerance:.3e} \
                 after {panels} panels"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
