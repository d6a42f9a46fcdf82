//! Density of the first hitting time `T_a` of level `a` by a Bessel process
//! started at `x > a`.
//!
//! Formulas are written at `a = 1`; other levels go through
//! [`HittingQuery::normalized`], using `T_a = a^2 T_1` in law.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::kernels::Bracket;

/// Parameters of a hitting-time density evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HittingQuery {
    pub mu: f64,
    pub a: f64,
    pub x: f64,
    pub s: f64,
}

impl HittingQuery {
    pub fn new(mu: f64, a: f64, x: f64, s: f64) -> Result<Self> {
        check(a, x, s)?;
        Ok(Self { mu, a, x, s })
    }

    /// `(x/a, s/a^2, a^-2)`: `q_{x,a}(s) = a^-2 q_{x/a,1}(s/a^2)`.
    pub fn normalized(&self) -> (f64, f64, f64) {
        (self.x / self.a, self.s / (self.a * self.a), 1.0 / (self.a * self.a))
    }
}

fn check(a: f64, x: f64, s: f64) -> Result<()> {
    if !(a > 0.0) || !(x > a) || !(s > 0.0) || !x.is_finite() {
        return domain(format!("hitting density needs x > a > 0 and s > 0 (a={a}, x={x}, s={s})"));
    }
    Ok(())
}

fn gauss_core(d: f64, s: f64) -> f64 {
    (-d * d / (2.0 * s)).exp() / (2.0 * PI * s * s * s).sqrt()
}

/// `mu = 1/2` density `a (x-a)/x (2 pi s^3)^(-1/2) exp(-(x-a)^2/2s)`.
/// Its total mass is the escape complement `a/x`.
pub fn q_half_exact(a: f64, x: f64, s: f64) -> Result<f64> {
    check(a, x, s)?;
    Ok(a * (x - a) / x * gauss_core(x - a, s))
}

/// Leading asymptotic density at `a = 1`,
/// `(x-1) (2 pi s^3)^(-1/2) x^(-mu-1/2) exp(-(x-1)^2/2s)`, with the
/// structural error scale `s/x`.
pub fn q_asymptotic(mu: f64, x: f64, s: f64) -> Result<(f64, f64)> {
    check(1.0, x, s)?;
    let value = (x - 1.0) / x * gauss_core(x - 1.0, s) * x.powf(0.5 - mu);
    Ok((value, s / x))
}

/// Rigorous bounds at `a = 1`: two-sided for `0 <= mu < 1/2`, upper only
/// for `mu >= 1/2`.
pub fn q_bounds(mu: f64, x: f64, s: f64) -> Result<Bracket> {
    if !(mu >= 0.0) {
        return domain(format!("hitting bounds need mu >= 0, got {mu}"));
    }
    let (v, r) = q_asymptotic(mu, x, s)?;
    Ok(if mu < 0.5 {
        Bracket {
            lower: Some(v),
            upper: v * (1.0 + (1.0 - 4.0 * mu * mu) / 8.0 * r),
            tag: "two-sided error of the leading term".into(),
        }
    } else {
        Bracket {
            lower: None,
            upper: v,
            tag: "leading term dominates".into(),
        }
    })
}

/// Comparison envelope at `a = 1`. Density values divided by it stay in a
/// fixed positive interval depending only on `mu`.
pub fn q_envelope(mu: f64, x: f64, s: f64) -> Result<f64> {
    check(1.0, x, s)?;
    let core = (x - 1.0) * (-(x - 1.0).powi(2) / (2.0 * s)).exp() * s.powf(-1.5);
    if mu == 0.0 {
        let logs = (1.0 + x.ln()) / (1.0 + (s + x).ln());
        let tail = (x + s).sqrt() / (1.0 + (1.0 + s / x).ln());
        return Ok(core / x * logs * tail);
    }
    let m = mu.abs();
    let near = x.powf(-2.0 * mu).min(1.0);
    Ok(core * near * x.powf(2.0 * m - 1.0) * (s + x).powf(0.5 - m))
}
