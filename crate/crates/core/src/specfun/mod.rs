//! Special functions used by the mode sums and the asymptotic expansions.

pub mod bessel;
pub mod debye;
pub mod gamma;
pub mod lambda;
pub mod rational_poly;
pub mod signed_log;

pub use bessel::{
    bessel_log, bessel_log_direct, bessel_log_uniform, bessel_log_with, log_bessel_i, log_bessel_k,
    robin_combination, robin_from, BesselKind, BesselLog, BesselOptions,
};
pub use gamma::{dirichlet_eta, gamma_fn, ln_gamma, recip_gamma, riemann_zeta};
pub use lambda::lambda_integral;
pub use rational_poly::{rational, RationalPolynomial};
pub use signed_log::SignedLog;
