use super::exact::free_kernel;
use crate::error::{domain, Error, Result};
use crate::hitting::q_half_exact;
use crate::quadrature::{hunt_integral, QuadratureSpec};

/// Source of the hitting-time density used in the Hunt formula.
pub enum QSource<'a> {
    /// Closed form, valid only at `mu = 1/2`.
    ExactHalf,
    /// Caller-provided density of the hitting time of `a` from `x`.
    Supplied(&'a dyn Fn(f64) -> f64),
}

/// Result of the Hunt subtraction `free - r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HuntEval {
    pub value: f64,
    pub free: f64,
    pub subtracted: f64,
    /// `log10(free / |free - subtracted|)`: decimal digits lost.
    pub cancellation_digits: f64,
    /// A small negative difference was reset to zero.
    pub clamped: bool,
}

/// Killed kernel `p(t,x,y) - int_0^t p(t-s,a,y) q(s) ds`.
pub fn hunt_kernel(
    mu: f64,
    a: f64,
    t: f64,
    x: f64,
    y: f64,
    q_source: QSource<'_>,
    spec: &QuadratureSpec,
) -> Result<HuntEval> {
    let free = free_kernel(mu, t, x, y)?;
    let subtracted = match q_source {
        QSource::ExactHalf => {
            if mu != 0.5 {
                return domain(format!("the closed-form hitting density needs mu = 1/2, got {mu}"));
            }
            hunt_integral(mu, a, t, x, y, |s| q_half_exact(a, x, s).unwrap_or(f64::NAN), spec)?
        }
        QSource::Supplied(q) => hunt_integral(mu, a, t, x, y, q, spec)?,
    };
    let diff = free - subtracted;
    let slack = spec.rel_tol * free;
    let cancellation_digits = if diff == 0.0 { f64::INFINITY } else { (free / diff.abs()).log10() };
    if diff <= 0.0 {
        if -diff <= slack {
            return Ok(HuntEval { value: 0.0, free, subtracted, cancellation_digits, clamped: true });
        }
        return Err(Error::CatastrophicSubtraction { free, subtracted });
    }
    if diff < slack {
        return Err(Error::CatastrophicSubtraction { free, subtracted });
    }
    Ok(HuntEval { value: diff, free, subtracted, cancellation_digits, clamped: false })
}
