//! Dirichlet heat kernels of the Bessel operator on a half-line `(a, inf)`.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: modified Bessel functions, expansion coefficients, `erfc`,
//!   incomplete gamma;
//! * [`quadrature`]: adaptive integration for integrands with essential
//!   singularities at the endpoints, plus closed-form integral identities;
//! * [`kernels`]: the free and killed kernels, large-`xy/t` expansions,
//!   rigorous brackets and the Hunt-formula evaluator;
//! * [`hitting`]: first-passage densities at the barrier;
//! * [`montecarlo`]: a seeded, deterministic simulation oracle.
//!
//! All kernel values are densities with respect to `y^(2 mu + 1) dy`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hitting;
pub mod kernels;
pub mod montecarlo;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
