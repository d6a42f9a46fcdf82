use crate::error::{domain, Result};
use crate::specfun::{bessel_k_scaled, erfc};

use std::f64::consts::PI;

/// `int_0^t s^(-3/2) (t-s)^(-1/2) exp(-A/s - B/(t-s)) ds
///  = sqrt(pi/(A t)) exp(-(sqrt A + sqrt B)^2 / t)`.
pub fn closed_mu12(left_pit: f64, right_pit: f64, t: f64) -> Result<f64> {
    if !(left_pit > 0.0) || !(right_pit >= 0.0) || !(t > 0.0) {
        return domain(format!(
            "closed_mu12 needs A > 0, B >= 0, t > 0 (A={left_pit}, B={right_pit}, t={t})"
        ));
    }
    let r = left_pit.sqrt() + right_pit.sqrt();
    Ok((PI / (left_pit * t)).sqrt() * (-r * r / t).exp())
}

/// `int_0^t s^(-1/2) (t-s)^(-1/2) exp(-c/s - d/(t-s)) ds
///  = pi erfc((sqrt c + sqrt d) / sqrt t)`.
pub fn closed_mu32(c: f64, d: f64, t: f64) -> Result<f64> {
    if !(c > 0.0) || !(d >= 0.0) || !(t > 0.0) {
        return domain(format!("closed_mu32 needs c > 0, d >= 0, t > 0 (c={c}, d={d}, t={t})"));
    }
    Ok(PI * erfc((c.sqrt() + d.sqrt()) / t.sqrt()))
}

/// `int_0^inf w^(mu-1) exp(-c w - d/w) dw = 2 (d/c)^(mu/2) K_mu(2 sqrt(c d))`.
pub fn k_integral(mu: f64, c: f64, d: f64) -> Result<f64> {
    if !(c > 0.0) || !(d > 0.0) {
        return domain(format!("k_integral needs c, d > 0 (c={c}, d={d})"));
    }
    let z = 2.0 * (c * d).sqrt();
    let log = (0.5 * mu) * (d / c).ln() + bessel_k_scaled(mu, z)?.ln() - z;
    Ok(2.0 * log.exp())
}
