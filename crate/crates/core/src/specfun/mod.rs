//! Scalar special functions: modified Bessel functions of real order, the
//! large-argument coefficients `c_k`, `erfc` and the upper incomplete gamma
//! function.

mod bessel_i;
mod bessel_k;
mod coeff;
mod gamma;

pub use bessel_i::{
    bessel_i, bessel_i_asym, bessel_i_asym_scaled, bessel_i_scaled, bessel_i_series,
    bessel_i_with, ln_bessel_i, ln_bessel_i_asym,
};
pub use bessel_k::{bessel_k, bessel_k_reflection, bessel_k_scaled};
pub use coeff::coeff_c;
pub use gamma::{erfc, gamma, ln_gamma, rgamma, upper_incomplete_gamma};

use crate::error::{domain, Result};

/// A Bessel index together with its reflection and regime constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselIndex {
    mu: f64,
    abs_mu: f64,
    t0: f64,
}

impl BesselIndex {
    pub fn new(mu: f64) -> Result<Self> {
        if !mu.is_finite() {
            return domain(format!("index must be finite, got {mu}"));
        }
        let abs_mu = mu.abs();
        let t0 = if abs_mu <= 0.5 {
            1.0
        } else {
            8.0 / (4.0 * mu * mu - 1.0)
        };
        Ok(Self { mu, abs_mu, t0 })
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn abs_mu(&self) -> f64 {
        self.abs_mu
    }

    /// Time threshold `t0(mu)` separating the short-time and long-time
    /// error scales, in units of `a^2`.
    pub fn t0(&self) -> f64 {
        self.t0
    }
}

/// Convenience wrapper for `BesselIndex::new(mu).t0()` on finite input.
pub fn t0(mu: f64) -> f64 {
    let m = mu.abs();
    if m <= 0.5 {
        1.0
    } else {
        8.0 / (4.0 * mu * mu - 1.0)
    }
}

/// Truncation controls for the power series and the switch to the
/// large-argument expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
    /// The asymptotic branch is used once `z >= asym_switch + mu^2`.
    pub asym_switch: f64,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 500,
            asym_switch: 30.0,
        }
    }
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize, asym_switch: f64) -> Result<Self> {
        if !(rel_tol > 0.0) || max_terms < 1 || !(asym_switch > 0.0) {
            return domain(format!(
                "invalid series control: rel_tol={rel_tol}, max_terms={max_terms}, asym_switch={asym_switch}"
            ));
        }
        Ok(Self {
            rel_tol,
            max_terms,
            asym_switch,
        })
    }

    pub fn switch_point(&self, mu: f64) -> f64 {
        self.asym_switch + mu * mu
    }
}
