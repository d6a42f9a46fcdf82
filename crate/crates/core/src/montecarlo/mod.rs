//! Seeded simulation of Bessel processes killed at a level `a`.
//!
//! Every path owns a ChaCha8 stream keyed by `(seed, path index)`, so the
//! merged estimates do not depend on how paths are split across threads.

mod bridge;
mod estimate;
mod step;

pub use bridge::{estimate_kernel_bridge, BridgeConfig, BridgeEstimate};
pub use estimate::{
    default_hitting_bins, default_kernel_bins, estimate_hitting_mc, estimate_kernel_mc,
    simulate_paths, DensityEstimate, McMeta, PathSamples,
};

use serde::Serialize;

use crate::error::{domain, Error, Result};

/// Path discretisation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Scheme {
    /// Exact transition of the squared process between monitoring times.
    ExactSquaredBessel,
    /// Explicit Euler step of `dR = (2mu+1)/(2R) dt + dW`.
    EulerSde,
}

/// Simulation settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McConfig {
    pub paths: u64,
    /// Monitoring interval.
    pub step: f64,
    pub seed: u64,
    pub scheme: Scheme,
    /// Kill between monitoring times with the Brownian-bridge crossing
    /// probability.
    pub bridge_correction: bool,
    /// Bin edges; `None` selects the default grid of the estimator.
    pub bins: Option<Vec<f64>>,
    /// Upper limit on `paths * steps`.
    pub budget: u64,
}

pub const DEFAULT_BUDGET: u64 = 20_000_000_000;

impl McConfig {
    pub fn new(paths: u64, step: f64, seed: u64) -> Self {
        Self {
            paths,
            step,
            seed,
            scheme: Scheme::ExactSquaredBessel,
            bridge_correction: true,
            bins: None,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_bridge(mut self, on: bool) -> Self {
        self.bridge_correction = on;
        self
    }

    pub fn with_bins(mut self, edges: Vec<f64>) -> Self {
        self.bins = Some(edges);
        self
    }

    pub(crate) fn steps(&self, horizon: f64) -> u64 {
        (horizon / self.step - 1e-9).ceil().max(1.0) as u64
    }

    pub(crate) fn validate(&self, mu: f64, a: f64, x0: f64, horizon: f64) -> Result<()> {
        if !(mu > -1.0) {
            return Err(Error::UnsupportedIndex(mu));
        }
        if self.paths == 0 || !(self.step > 0.0) {
            return domain(format!("need paths >= 1 and step > 0 (paths={}, step={})", self.paths, self.step));
        }
        if !(a > 0.0) || !(x0 > a) || !(horizon > 0.0) || !x0.is_finite() || !horizon.is_finite() {
            return domain(format!("need x0 > a > 0 and t > 0 (a={a}, x0={x0}, t={horizon})"));
        }
        let requested = self.paths.saturating_mul(self.steps(horizon));
        if requested > self.budget {
            return Err(Error::Budget { requested, budget: self.budget });
        }
        Ok(())
    }
}

pub(crate) fn check_edges(edges: &[f64], floor: f64) -> Result<()> {
    if edges.len() < 2 {
        return domain("need at least two bin edges");
    }
    if edges.windows(2).any(|w| !(w[1] > w[0])) {
        return domain("bin edges must be strictly increasing");
    }
    if !(edges[0] >= floor) || !edges[edges.len() - 1].is_finite() {
        return domain(format!("bin edges must lie in [{floor}, inf)"));
    }
    Ok(())
}
