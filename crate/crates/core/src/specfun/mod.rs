//! Special functions and quadratures used by the spectral pipelines.

mod gamma;
mod hyp2f1;
mod moments;
pub mod quadrature;

pub use gamma::{exp_integral_e1, exp_integral_e2, gamma, ln_gamma, recip_gamma, upper_gamma};
pub use hyp2f1::{hyp2f1, Hyp2f1};
pub use moments::{heat_moment, identity_term_integral, moment_tail_bound, pi_sech2};
pub use quadrature::{Estimate, GaussLegendre, QuadratureSpec, RuleKind};

/// Euler–Mascheroni constant (OEIS A001620: 0.57721566490153286060651209008240243104...).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpecfunError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("argument outside domain: {0}")]
    Domain(&'static str),
    #[error("no convergence: {0}")]
    NoConvergence(&'static str),
    #[error("overflow in {0}")]
    Overflow(&'static str),
    #[error("tolerance not met: achieved {achieved:e}, requested {requested:e}")]
    ToleranceNotMet { achieved: f64, requested: f64 },
}
