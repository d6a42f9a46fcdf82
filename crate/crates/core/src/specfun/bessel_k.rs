use super::bessel_i::bessel_i_series;
use super::SeriesControl;
use crate::error::{domain, Error, Result};

use std::f64::consts::PI;

const EPS: f64 = 1e-16;
const MAX_ITER: usize = 10_000;

// Taylor coefficients of 1/Gamma(1 + v) about v = 0.
const RGAMMA_TAYLOR: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_9,
    -0.042_002_635_034_095_24,
    0.166_538_611_382_291_48,
    -0.042_197_734_555_544_33,
    -0.009_621_971_527_876_973,
    0.007_218_943_246_663_1,
    -0.001_165_167_591_859_065_2,
    -0.000_215_241_674_114_950_98,
    0.000_128_050_282_388_116_2,
    -2.013_485_478_078_824e-5,
    -1.250_493_482_142_670_6e-6,
    1.133_027_231_981_696e-6,
    -2.056_338_416_977_607e-7,
    6.116_095_104_481_416e-9,
    5.002_007_644_469_223e-9,
    -1.181_274_570_487_02e-9,
    1.043_426_711_691_100_5e-10,
    7.782_263_439_905_071e-12,
    -3.696_805_618_642_206e-12,
    5.100_370_287_454_476e-13,
    -2.058_326_053_566_506_6e-14,
    -5.348_122_539_423_018e-15,
    1.226_778_628_238_260_8e-15,
    -1.181_259_301_697_458_8e-16,
];

/// Returns `(gam1, gam2, 1/Gamma(1+v), 1/Gamma(1-v))` for `|v| <= 1/2`, where
/// `gam1 = (1/Gamma(1-v) - 1/Gamma(1+v)) / (2v)` and
/// `gam2 = (1/Gamma(1-v) + 1/Gamma(1+v)) / 2`.
fn temme_gammas(v: f64) -> (f64, f64, f64, f64) {
    let mut even = 0.0;
    let mut odd = 0.0;
    for (j, &c) in RGAMMA_TAYLOR.iter().enumerate().rev() {
        if j % 2 == 0 {
            even = even * v * v + c;
        } else {
            odd = odd * v * v + c;
        }
    }
    // 1/Gamma(1+v) = even(v^2) + v * odd(v^2)
    let plus = even + v * odd;
    let minus = even - v * odd;
    (-odd, even, plus, minus)
}

/// Scaled pair `(e^z K_v(z), e^z K_{v+1}(z))` for `|v| <= 1/2`.
fn temme_pair(v: f64, z: f64) -> Result<(f64, f64)> {
    let v2 = v * v;
    if z <= 2.0 {
        let x2 = 0.5 * z;
        let pimu = PI * v;
        let fact = if pimu.abs() < EPS { 1.0 } else { pimu / pimu.sin() };
        let d = -x2.ln();
        let e = v * d;
        let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
        let (gam1, gam2, gampl, gammi) = temme_gammas(v);
        let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
        let mut sum = ff;
        let ee = e.exp();
        let mut p = 0.5 * ee / gampl;
        let mut q = 0.5 / (ee * gammi);
        let mut c = 1.0;
        let dd = x2 * x2;
        let mut sum1 = p;
        let mut converged = false;
        for i in 1..MAX_ITER {
            let fi = i as f64;
            ff = (fi * ff + p + q) / (fi * fi - v2);
            c *= dd / fi;
            p /= fi - v;
            q /= fi + v;
            let del = c * ff;
            sum += del;
            sum1 += c * (p - fi * ff);
            if del.abs() < sum.abs() * EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::SeriesBudget {
                terms: MAX_ITER,
                partial_sum: sum,
                last_term: f64::NAN,
            });
        }
        let scale = z.exp();
        Ok((sum * scale, sum1 * 2.0 / z * scale))
    } else {
        // Steed's algorithm on Temme's continued fraction
        let mut b = 2.0 * (1.0 + z);
        let mut d = 1.0 / b;
        let mut delh = d;
        let mut h = d;
        let mut q1 = 0.0;
        let mut q2 = 1.0;
        let a1 = 0.25 - v2;
        let mut q = a1;
        let mut c = a1;
        let mut a = -a1;
        let mut s = 1.0 + q * delh;
        let mut converged = false;
        for i in 2..MAX_ITER {
            let fi = i as f64;
            a -= 2.0 * (fi - 1.0);
            c = -a * c / fi;
            let qnew = (q1 - b * q2) / a;
            q1 = q2;
            q2 = qnew;
            q += c * qnew;
            b += 2.0;
            d = 1.0 / (b + a * d);
            delh *= b * d - 1.0;
            h += delh;
            let dels = q * delh;
            s += dels;
            if (dels / s).abs() < EPS {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::SeriesBudget {
                terms: MAX_ITER,
                partial_sum: s,
                last_term: f64::NAN,
            });
        }
        h *= a1;
        let k0 = (PI / (2.0 * z)).sqrt() / s;
        let k1 = k0 * (v + z + 0.5 - h) / z;
        Ok((k0, k1))
    }
}

/// `e^z K_mu(z)` for any real order.
pub fn bessel_k_scaled(mu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() || !mu.is_finite() {
        return domain(format!("K_mu(z) needs z > 0 and finite mu (mu={mu}, z={z})"));
    }
    let nu = mu.abs();
    let nl = (nu + 0.5).floor();
    let v = nu - nl;
    let (mut k0, mut k1) = temme_pair(v, z)?;
    for i in 1..=(nl as usize) {
        let next = (v + i as f64) * 2.0 / z * k1 + k0;
        k0 = k1;
        k1 = next;
    }
    if !k0.is_finite() {
        return Err(Error::Overflow(format!("K_{mu}({z})")));
    }
    Ok(k0)
}

/// Modified Bessel function of the second kind, `K_mu(z)`, for real order.
/// Even in `mu`; evaluated by Temme's method with upward recurrence.
pub fn bessel_k(mu: f64, z: f64) -> Result<f64> {
    let s = bessel_k_scaled(mu, z)?;
    let v = s * (-z).exp();
    if v == 0.0 && s > 0.0 {
        return Err(Error::Overflow(format!("K_{mu}({z}) underflows; use bessel_k_scaled")));
    }
    Ok(v)
}

/// `K_mu(z) = (pi/2) (I_{-mu}(z) - I_mu(z)) / sin(pi mu)` evaluated literally
/// from the power series. Orders within 0.05 of an integer, or arguments where
/// the subtraction cancels more than six digits, are rejected.
pub fn bessel_k_reflection(mu: f64, z: f64) -> Result<f64> {
    let dist = (mu - mu.round()).abs();
    if dist < 0.05 {
        return Err(Error::PrecisionLoss {
            what: format!("order {mu} within 0.05 of an integer"),
            loss: 1.0 / (PI * dist).sin().abs().max(f64::MIN_POSITIVE),
        });
    }
    let ctl = SeriesControl {
        max_terms: 2000,
        ..SeriesControl::default()
    };
    let ip = bessel_i_series(mu, z, &ctl)?;
    let im = bessel_i_series(-mu, z, &ctl)?;
    let diff = im - ip;
    let loss = f64::EPSILON * ip.abs().max(im.abs()) / diff.abs();
    if !(loss <= 1e-6) {
        return Err(Error::PrecisionLoss {
            what: format!("I_-mu - I_mu at mu={mu}, z={z}"),
            loss,
        });
    }
    Ok(0.5 * PI * diff / (PI * mu).sin())
}
