use super::coeff::coeff_c;
use super::gamma::rgamma;
use super::SeriesControl;
use crate::error::{domain, Error, Result};

use std::f64::consts::PI;

// Largest argument for which exp(z) is finite.
const EXP_MAX: f64 = 709.78;

fn check_arg(z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return domain(format!("Bessel argument must be positive and finite, got {z}"));
    }
    Ok(())
}

/// Ascending power series
/// `I_mu(z) = sum_k (z/2)^(2k+mu) / (k! Gamma(mu+k+1))`.
pub fn bessel_i_series(mu: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    check_arg(z)?;
    // I_{-n} = I_n for integer n; the lead coefficients vanish otherwise.
    let mu = if mu < 0.0 && mu == mu.floor() { -mu } else { mu };
    let half = 0.5 * z;
    let q = half * half;
    let mut term = (mu * half.ln()).exp() * rgamma(mu + 1.0);
    if !term.is_finite() {
        return Err(Error::Overflow(format!("I series lead term at mu={mu}, z={z}")));
    }
    let mut sum = term;
    for k in 1..=ctl.max_terms {
        let kf = k as f64;
        term *= q / (kf * (mu + kf));
        sum += term;
        // terms grow until k ~ z/2; only stop once they are shrinking
        if kf > half && term.abs() < ctl.rel_tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::SeriesBudget {
        terms: ctl.max_terms,
        partial_sum: sum,
        last_term: term,
    })
}

/// `1 + sum_{k=1}^{n-1} c_k (-1/z)^k` together with `|c_n| / z^n`.
fn asym_bracket(mu: f64, z: f64, n: usize) -> (f64, f64) {
    let mut s = 1.0;
    let mut pow = 1.0;
    for k in 1..n {
        pow *= -1.0 / z;
        s += coeff_c(mu, k) * pow;
    }
    (s, coeff_c(mu, n).abs() / z.powi(n as i32))
}

/// Large-argument expansion truncated after `n` terms. Returns the value and
/// the first omitted relative term `|c_n|/z^n`.
pub fn bessel_i_asym(mu: f64, z: f64, n: usize) -> Result<(f64, f64)> {
    check_arg(z)?;
    if n < 1 {
        return domain("asymptotic expansion needs n >= 1");
    }
    if z > EXP_MAX {
        return Err(Error::Overflow(format!(
            "exp({z}) overflows; use ln_bessel_i_asym"
        )));
    }
    let (s, scale) = asym_bracket(mu, z, n);
    Ok((z.exp() / (2.0 * PI * z).sqrt() * s, scale))
}

/// `exp(-z)` times [`bessel_i_asym`].
pub fn bessel_i_asym_scaled(mu: f64, z: f64, n: usize) -> Result<(f64, f64)> {
    check_arg(z)?;
    if n < 1 {
        return domain("asymptotic expansion needs n >= 1");
    }
    let (s, scale) = asym_bracket(mu, z, n);
    Ok((s / (2.0 * PI * z).sqrt(), scale))
}

/// Natural log of [`bessel_i_asym`].
pub fn ln_bessel_i_asym(mu: f64, z: f64, n: usize) -> Result<(f64, f64)> {
    let (v, scale) = bessel_i_asym_scaled(mu, z, n)?;
    if !(v > 0.0) {
        return domain(format!("truncated expansion is non-positive at z={z}, n={n}"));
    }
    Ok((v.ln() + z, scale))
}

/// Scaled asymptotic sum `sqrt(2 pi z) e^{-z} I_mu(z)` summed to the smallest
/// term.
fn asym_full(mu: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    let m = 4.0 * mu * mu;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..=ctl.max_terms {
        let odd = (2 * k - 1) as f64;
        term *= -(m - odd * odd) / (8.0 * k as f64 * z);
        if term.abs() > prev {
            // divergence sets in: optimal truncation reached
            return Ok(sum);
        }
        sum += term;
        if term.abs() < ctl.rel_tol * sum.abs() * 0.1 {
            return Ok(sum);
        }
        prev = term.abs();
    }
    Err(Error::SeriesBudget {
        terms: ctl.max_terms,
        partial_sum: sum,
        last_term: term,
    })
}

/// `exp(-z) I_mu(z)` with the given controls.
fn scaled_with(mu: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    check_arg(z)?;
    if z >= ctl.switch_point(mu) {
        Ok(asym_full(mu, z, ctl)? / (2.0 * PI * z).sqrt())
    } else {
        Ok(bessel_i_series(mu, z, ctl)? * (-z).exp())
    }
}

/// `I_mu(z)`: power series below the switch point, large-argument expansion
/// (summed to optimal truncation) above it.
pub fn bessel_i_with(mu: f64, z: f64, ctl: &SeriesControl) -> Result<f64> {
    check_arg(z)?;
    if z >= ctl.switch_point(mu) {
        if z > EXP_MAX {
            return Err(Error::Overflow(format!("I_mu({z}) overflows; use ln_bessel_i")));
        }
        Ok(asym_full(mu, z, ctl)? * z.exp() / (2.0 * PI * z).sqrt())
    } else {
        bessel_i_series(mu, z, ctl)
    }
}

pub fn bessel_i(mu: f64, z: f64) -> Result<f64> {
    bessel_i_with(mu, z, &SeriesControl::default())
}

/// Exponentially scaled `exp(-z) I_mu(z)`, finite for every `z > 0`.
pub fn bessel_i_scaled(mu: f64, z: f64) -> Result<f64> {
    scaled_with(mu, z, &SeriesControl::default())
}

pub fn ln_bessel_i(mu: f64, z: f64) -> Result<f64> {
    let s = bessel_i_scaled(mu, z)?;
    if !(s > 0.0) {
        return domain(format!("I_{mu}({z}) is not positive"));
    }
    Ok(s.ln() + z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn ctl() -> SeriesControl {
        SeriesControl::default()
    }

    #[test]
    fn series_at_origin() {
        let v = bessel_i_series(0.0, 1e-8, &ctl()).unwrap();
        assert!((v - 1.0).abs() <= 1e-15);
        assert!((bessel_i(0.0, 1e-12).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn half_integer_closed_form() {
        // I_{1/2}(z) = sqrt(2/(pi z)) sinh z, elementary
        let v = bessel_i_series(0.5, 1.0, &ctl()).unwrap();
        assert!(rel(v, (2.0 / PI).sqrt() * 1f64.sinh()) < 1e-15);
        let v = bessel_i(0.5, 2.0).unwrap();
        assert!(rel(v, (1.0 / PI).sqrt() * 2f64.sinh()) < 1e-15);
        // I_{-1/2}(z) = sqrt(2/(pi z)) cosh z
        let v = bessel_i_series(-0.5, 3.0, &ctl()).unwrap();
        assert!(rel(v, (2.0 / (3.0 * PI)).sqrt() * 3f64.cosh()) < 1e-14);
    }

    #[test]
    fn small_argument_scaling() {
        let mu = 0.3;
        let mut prev = f64::INFINITY;
        for z in [1e-1f64, 1e-2, 1e-3, 1e-4] {
            let lead = z.powf(mu) / (2f64.powf(mu) * gamma(1.0 + mu));
            let gap = (bessel_i_series(mu, z, &ctl()).unwrap() / lead - 1.0).abs();
            assert!(gap < prev);
            // next term is (z/2)^2/(1+mu)
            assert!(gap <= z * z / (4.0 * (1.0 + mu)) * 1.01);
            prev = gap;
        }
    }

    #[test]
    fn asym_half_has_no_corrections() {
        let (v, scale) = bessel_i_asym(0.5, 50.0, 4).unwrap();
        assert!(rel(v, 50f64.exp() / (100.0 * PI).sqrt()) < 1e-15);
        assert_eq!(scale, 0.0);
    }

    #[test]
    fn asym_first_correction() {
        let (v, _) = bessel_i_asym(0.0, 30.0, 2).unwrap();
        let expect = 30f64.exp() / (60.0 * PI).sqrt() * (1.0 + 1.0 / (8.0 * 30.0));
        assert!(rel(v, expect) < 1e-15);
    }

    #[test]
    fn asym_remainder_against_series() {
        let (v, scale) = bessel_i_asym(1.0, 40.0, 3).unwrap();
        let s = bessel_i_series(1.0, 40.0, &ctl()).unwrap();
        assert!(rel(v, s) <= 2.0 * scale);
    }

    #[test]
    fn asym_overflow_and_log_twin() {
        assert!(matches!(bessel_i_asym(0.0, 800.0, 2), Err(Error::Overflow(_))));
        let (l, _) = ln_bessel_i_asym(0.0, 800.0, 2).unwrap();
        let expect = 800.0 - 0.5 * (1600.0 * PI).ln() + (1.0 + 1.0 / 6400.0f64).ln();
        assert!((l - expect).abs() < 1e-12);
        assert!(matches!(bessel_i(0.0, 800.0), Err(Error::Overflow(_))));
        assert!(ln_bessel_i(0.0, 800.0).is_ok());
    }

    #[test]
    fn branch_continuity() {
        for mu in [0.0, 0.5, 1.0, 2.5, 5.0, -0.3] {
            let c = ctl();
            let z = c.switch_point(mu);
            let s = bessel_i_series(mu, z, &c).unwrap();
            let a = bessel_i(mu, z).unwrap();
            assert!(rel(a, s) <= 1e-12, "mu={mu}: {a} vs {s}");
        }
        let s = bessel_i_series(0.0, 35.0, &ctl()).unwrap();
        assert!(rel(bessel_i(0.0, 35.0).unwrap(), s) <= 1e-12);
    }

    #[test]
    fn series_budget_error() {
        let tight = SeriesControl::new(1e-15, 3, 30.0).unwrap();
        match bessel_i_series(0.0, 20.0, &tight) {
            Err(Error::SeriesBudget { terms, partial_sum, .. }) => {
                assert_eq!(terms, 3);
                assert!(partial_sum > 0.0);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_argument() {
        assert!(bessel_i(0.0, 0.0).is_err());
        assert!(bessel_i(0.0, -1.0).is_err());
    }
}
