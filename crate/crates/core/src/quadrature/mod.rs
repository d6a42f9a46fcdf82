//! Adaptive quadrature for integrands with exponentially damped endpoint
//! singularities, and the closed-form integral identities used to check it.

mod closed;
mod gk;
mod hunt;
mod singular;

pub use closed::{closed_mu12, closed_mu32, k_integral};
pub use gk::{integrate_interval, integrate_tail, Estimate};
pub use hunt::{hunt_integral, laplace_type_integral};
pub use singular::{integrate_endpoint_pits, integrate_singular, SingularIntegrand};

use crate::error::{domain, Result};

/// Tolerances for the adaptive integrators. A result is accepted when the
/// error estimate is below `rel_tol * |value|` or below `abs_tol`, whichever
/// is weaker.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_depth: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-300,
            max_depth: 60,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_depth: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || !(abs_tol >= 0.0) || max_depth < 1 {
            return domain(format!(
                "invalid quadrature spec: rel_tol={rel_tol}, abs_tol={abs_tol}, max_depth={max_depth}"
            ));
        }
        Ok(Self {
            rel_tol,
            abs_tol,
            max_depth,
        })
    }

    pub(crate) fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}
