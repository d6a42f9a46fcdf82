use std::cell::Cell;

use super::gk::integrate_tail;
use super::singular::integrate_endpoint_pits;
use super::QuadratureSpec;
use crate::error::{domain, Error, Result};
use crate::kernels::free_kernel;

/// Hunt convolution `r_a(t,x,y) = int_0^t p(t-s, a, y) q(s) ds`, where `p` is
/// the free Bessel kernel and `q` the density of the first hitting time of
/// `a` from `x`.
pub fn hunt_integral<Q: Fn(f64) -> f64>(
    mu: f64,
    a: f64,
    t: f64,
    x: f64,
    y: f64,
    q_density: Q,
    spec: &QuadratureSpec,
) -> Result<f64> {
    if !(a > 0.0) || !(t > 0.0) || !(x > a) || !(y > a) {
        return domain(format!(
            "hunt integral needs a > 0, t > 0, x > a, y > a (a={a}, t={t}, x={x}, y={y})"
        ));
    }
    let negative = Cell::new(None::<(f64, f64)>);
    let failure = Cell::new(None::<Error>);
    let v = integrate_endpoint_pits(
        |s, rest| {
            let q = q_density(s);
            if q < 0.0 || q.is_nan() {
                negative.set(Some((s, q)));
                return 0.0;
            }
            if q == 0.0 {
                return 0.0;
            }
            match free_kernel(mu, rest, a, y) {
                Ok(p) => p * q,
                Err(e) => {
                    failure.set(Some(e));
                    0.0
                }
            }
        },
        t,
        spec,
    )?;
    if let Some((s, q)) = negative.get() {
        return domain(format!("hitting density sample q({s}) = {q} is negative"));
    }
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(v)
}

/// Numerical value of `int_0^inf w^(mu-1) exp(-c w - d/w) dw`, computed
/// without Bessel functions: the piece on `(0, 1)` is mapped by `w -> 1/w`
/// and both halves are integrated as exponentially decaying tails.
pub fn laplace_type_integral(mu: f64, c: f64, d: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(c > 0.0) || !(d > 0.0) {
        return domain(format!("integral needs c, d > 0 (c={c}, d={d})"));
    }
    let upper = integrate_tail(
        |w: f64| ((mu - 1.0) * w.ln() - c * w - d / w).exp(),
        1.0,
        1.0,
        spec,
    )?;
    let lower = integrate_tail(
        |v: f64| ((-mu - 1.0) * v.ln() - c / v - d * v).exp(),
        1.0,
        1.0,
        spec,
    )?;
    Ok(upper.value + lower.value)
}
