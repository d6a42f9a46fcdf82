//! Heat-kernel evaluators for the Bessel operator on `(a, inf)`.
//!
//! Kernels are densities with respect to `m(dy) = y^(2 mu + 1) dy`. The
//! free kernel (`a = 0`) is exact through `I_|mu|`; the killed kernel is
//! available exactly at `mu = 1/2`, asymptotically for large `xy/t`,
//! rigorously bracketed by the `mu = 1/2` kernel, and numerically through
//! the Hunt formula.

mod asymptotic;
mod bracket;
mod exact;
mod hunt;

pub use asymptotic::{
    classify_regime, classify_regime_with, evaluate_asymptotic, evaluate_asymptotic_with,
    expansion_boundary, expansion_interior, DEFAULT_U_FLOOR,
};
pub use bracket::{bracket_kernel, Bracket};
pub use exact::{
    envelope_sharp, exact_half_kernel, exact_half_r, free_kernel, free_kernel_expansion,
    leading_term, reflect_index, rescale, Rescaled,
};
pub use hunt::{hunt_kernel, HuntEval, QSource};

use crate::error::{domain, Result};

/// A point `(a, t, x, y)` of the killed kernel's domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelQuery {
    pub a: f64,
    pub t: f64,
    pub x: f64,
    pub y: f64,
}

impl KernelQuery {
    pub fn new(a: f64, t: f64, x: f64, y: f64) -> Result<Self> {
        if !(a > 0.0) || !(t > 0.0) || !(x > a) || !(y > a) || !x.is_finite() || !y.is_finite() {
            return domain(format!(
                "kernel query needs a > 0, t > 0, x > a, y > a (a={a}, t={t}, x={x}, y={y})"
            ));
        }
        Ok(Self { a, t, x, y })
    }

    /// `xy/t`, the large parameter of the expansions.
    pub fn u(&self) -> f64 {
        self.x * self.y / self.t
    }

    /// `(x-a)(y-a)/t`, the distance-to-boundary driver.
    pub fn v(&self) -> f64 {
        (self.x - self.a) * (self.y - self.a) / self.t
    }

    /// Same point with `x <= y`.
    pub fn symmetrized(&self) -> Self {
        Self {
            x: self.x.min(self.y),
            y: self.x.max(self.y),
            ..*self
        }
    }
}

/// Which estimate of the error term applies at a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `t < a^2 t0(mu)`.
    ShortTime,
    /// Long time, both points beyond `2a`.
    LongInterior,
    /// Long time, `a < x < 2a < y`, `(x-a)(y-a)/t >= 1`.
    LongBoundaryTight,
    /// Long time, `a < x < 2a < y`, `(x-a)(y-a)/t < 1`.
    LongBoundaryDeep,
    /// `xy/t` below the floor, or long time with both points in `(a, 2a]`.
    NonAsymptotic,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::ShortTime => "ShortTime",
            Regime::LongInterior => "LongInterior",
            Regime::LongBoundaryTight => "LongBoundaryTight",
            Regime::LongBoundaryDeep => "LongBoundaryDeep",
            Regime::NonAsymptotic => "NonAsymptotic",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluation of an expansion.
///
/// `value == leading * (1 + correction)`. `error_scale` is the structural
/// size of the omitted terms with constant 1; the true constants depend on
/// `mu` and are not known, so it is not a rigorous bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionEval {
    pub value: f64,
    pub leading: f64,
    pub correction: f64,
    pub error_scale: f64,
    /// `None` for the free kernel, which has no regimes.
    pub regime: Option<Regime>,
    pub order_n: usize,
}
