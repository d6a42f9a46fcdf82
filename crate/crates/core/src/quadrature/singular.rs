use super::gk::{integrate_interval, integrate_tail};
use super::QuadratureSpec;
use crate::error::{domain, Result};

/// `s -> s^p (t-s)^q exp(-A/s) exp(-B/(t-s))` on `(0, t)`.
///
/// The heat-kernel integrals use `p = -3/2, q = -1/2` with
/// `A = (x-1)^2/2`, `B = (y-1)^2/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularIntegrand {
    pub left_pit: f64,
    pub right_pit: f64,
    pub t: f64,
    pub p: f64,
    pub q: f64,
}

impl SingularIntegrand {
    pub fn new(left_pit: f64, right_pit: f64, t: f64, p: f64, q: f64) -> Result<Self> {
        let f = Self {
            left_pit,
            right_pit,
            t,
            p,
            q,
        };
        f.validate()?;
        Ok(f)
    }

    /// The `f_{A,B,t}` profile: `p = -3/2`, `q = -1/2`.
    pub fn heat(left_pit: f64, right_pit: f64, t: f64) -> Result<Self> {
        Self::new(left_pit, right_pit, t, -1.5, -0.5)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t > 0.0) || !(self.left_pit >= 0.0) || !(self.right_pit >= 0.0) {
            return domain(format!("singular integrand needs t > 0 and A, B >= 0: {self:?}"));
        }
        if !(self.left_pit > 0.0 || self.p > -1.0) || !(self.right_pit > 0.0 || self.q > -1.0) {
            return domain(format!("non-integrable endpoint configuration: {self:?}"));
        }
        Ok(())
    }

    pub fn eval(&self, s: f64) -> f64 {
        let r = self.t - s;
        (self.p * s.ln() + self.q * r.ln() - self.left_pit / s - self.right_pit / r).exp()
    }
}

/// `int_0^{t/2} sigma^pow (t-sigma)^other_pow exp(-pit/sigma - other_pit/(t-sigma)) dsigma`.
fn half(pit: f64, pow: f64, other_pit: f64, other_pow: f64, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    if pit > 0.0 {
        // w = 1/sigma - 1/t turns the pit into exp(-pit w) on [1/t, inf)
        let g = |w: f64| {
            let denom = 1.0 + t * w;
            let sigma = t / denom;
            let rest = t * t * w / denom;
            ((pow + 2.0) * sigma.ln() + other_pow * rest.ln()
                - pit * (w + 1.0 / t)
                - other_pit / rest)
                .exp()
        };
        Ok(integrate_tail(g, 1.0 / t, 1.0 / t, spec)?.value)
    } else if pow > -1.0 {
        // sigma = (t/2) r^m with m = 1/(pow+1) makes sigma^pow dsigma flat
        let m = 1.0 / (pow + 1.0);
        let h = 0.5 * t;
        let g = |r: f64| {
            let sigma = h * r.powf(m);
            let rest = t - sigma;
            (other_pow * rest.ln() - other_pit / rest).exp()
        };
        Ok(h.powf(pow + 1.0) * m * integrate_interval(g, 0.0, 1.0, spec)?.value)
    } else {
        domain("non-integrable endpoint")
    }
}

/// `int_0^t s^p (t-s)^q exp(-A/s - B/(t-s)) ds`, split at `t/2` with each
/// half de-singularized by `w = 1/s - 1/t` (or a power map when the pit is
/// absent).
pub fn integrate_singular(f: &SingularIntegrand, spec: &QuadratureSpec) -> Result<f64> {
    f.validate()?;
    let left = half(f.left_pit, f.p, f.right_pit, f.q, f.t, spec)?;
    let right = half(f.right_pit, f.q, f.left_pit, f.p, f.t, spec)?;
    Ok(left + right)
}

/// `int_0^t g(s, t-s) ds` for integrands that vanish like `exp(-c/s)` at
/// `s = 0` and like `exp(-c/(t-s))` at `s = t`, up to algebraic factors.
/// Both halves use `w = 1/s - 1/t` (resp. in `t - s`); `t - s` is passed
/// separately so callers never lose it to cancellation.
pub fn integrate_endpoint_pits<G: Fn(f64, f64) -> f64>(
    g: G,
    t: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(t > 0.0) {
        return domain(format!("horizon must be positive, got {t}"));
    }
    let left = integrate_tail(
        |w: f64| {
            let denom = 1.0 + t * w;
            let s = t / denom;
            let rest = t * t * w / denom;
            g(s, rest) * s * s
        },
        1.0 / t,
        1.0 / t,
        spec,
    )?;
    let right = integrate_tail(
        |w: f64| {
            let denom = 1.0 + t * w;
            let sigma = t / denom;
            let rest = t * t * w / denom;
            g(rest, sigma) * sigma * sigma
        },
        1.0 / t,
        1.0 / t,
        spec,
    )?;
    Ok(left.value + right.value)
}
