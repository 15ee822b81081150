//! Self-contained special functions: associated Laguerre polynomials,
//! log-gamma, terminating hypergeometric sums, the closed-form
//! Laguerre-weighted integral, and adaptive quadrature on `[0, inf)`.

mod gamma;
mod hyper;
mod laguerre;
mod quad;

pub use gamma::log_gamma;
pub use hyper::{hyp1f1_poly, hyp3f2_unit, laguerre_weighted_integral};
pub use laguerre::{laguerre, laguerre_derivative, laguerre_eval, LaguerreEval};
pub use quad::{integrate_halfline, Quadrature};

use thiserror::Error;

/// Errors from the special-function layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("log_gamma requires x > 0, got {x}")]
    LogGammaDomain { x: f64 },
    #[error("gamma pole at argument {argument} in {context}")]
    GammaPole { argument: f64, context: &'static str },
    #[error("Pochhammer denominator hits zero at term {term} (parameter {parameter})")]
    PochhammerPole { parameter: f64, term: usize },
    #[error("quadrature did not converge: estimate {estimate}, error estimate {error_estimate}")]
    QuadratureDidNotConverge { estimate: f64, error_estimate: f64 },
    #[error("integrate_halfline requires a positive decay scale, got {scale}")]
    NonPositiveScale { scale: f64 },
}
