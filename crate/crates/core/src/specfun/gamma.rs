use crate::error::{domain, Error, Result};

const CF_EPS: f64 = 1e-16;
const CF_TINY: f64 = 1e-300;
const CF_MAX_ITER: usize = 10_000;

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `1/Gamma(x)`, which is zero at the non-positive integers.
pub fn rgamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.floor() {
        return 0.0;
    }
    if x > 171.0 {
        return (-ln_gamma(x)).exp();
    }
    1.0 / gamma(x)
}

/// Complementary error function `(2/sqrt(pi)) int_z^inf exp(-u^2) du`.
pub fn erfc(z: f64) -> f64 {
    libm::erfc(z)
}

/// Upper incomplete gamma function `int_x^inf r^(a-1) e^(-r) dr`
/// (not regularized).
pub fn upper_incomplete_gamma(a: f64, x: f64) -> Result<f64> {
    if !(a > 0.0) || !(x > 0.0) {
        return domain(format!("upper incomplete gamma needs a > 0, x > 0 (a={a}, x={x})"));
    }
    let log_pref = -x + a * x.ln();
    if x > a + 1.0 {
        // modified Lentz on the continued fraction
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / CF_TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..CF_MAX_ITER {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < CF_TINY {
                d = CF_TINY;
            }
            c = b + an / c;
            if c.abs() < CF_TINY {
                c = CF_TINY;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < CF_EPS {
                return Ok(log_pref.exp() * h);
            }
        }
        Err(Error::SeriesBudget {
            terms: CF_MAX_ITER,
            partial_sum: log_pref.exp() * h,
            last_term: 0.0,
        })
    } else {
        let mut ap = a;
        let mut del = 1.0 / a;
        let mut sum = del;
        for _ in 0..CF_MAX_ITER {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if del.abs() < sum.abs() * CF_EPS {
                let lower = sum * log_pref.exp();
                return Ok(gamma(a) - lower);
            }
        }
        Err(Error::SeriesBudget {
            terms: CF_MAX_ITER,
            partial_sum: sum,
            last_term: del,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn erfc_basics() {
        assert_eq!(erfc(0.0), 1.0);
        let z = 1.3;
        assert!((erfc(-z) - (2.0 - erfc(z))).abs() < 1e-15);
        for z in [-3.0, -0.5, 0.0, 0.7, 2.0, 6.0] {
            let v = erfc(z);
            assert!(v > 0.0 && v < 2.0);
        }
    }

    // erfc(z) z e^{z^2} sqrt(pi) -> 1; the asymptotic series gives 1 - 1/(2z^2) + ...
    #[test]
    fn erfc_tail_constant() {
        let pi = std::f64::consts::PI;
        let mut prev_gap = f64::INFINITY;
        for z in [4.0, 8.0, 16.0, 25.0] {
            let r = erfc(z) * z * (z * z).exp() * pi.sqrt();
            let gap = (1.0 - r).abs();
            assert!(gap < prev_gap);
            assert!((gap - 0.5 / (z * z)).abs() < 1.0 / z.powi(4));
            prev_gap = gap;
        }
    }

    // Independent check of the normalization: Simpson rule on the defining
    // integral truncated at u = 12.
    #[test]
    fn erfc_against_simpson() {
        let pi = std::f64::consts::PI;
        for z in [0.0, 0.3, 1.0, 2.2] {
            let n = 20_000;
            let h = (12.0 - z) / n as f64;
            let mut s = 0.0;
            for i in 0..=n {
                let u: f64 = z + h * i as f64;
                let w = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                s += w * (-u * u).exp();
            }
            let num = 2.0 / pi.sqrt() * s * h / 3.0;
            assert!(rel(erfc(z), num) < 1e-12, "z={z}");
        }
    }

    #[test]
    fn incomplete_gamma_closed_forms() {
        for x in [0.1, 1.0, 2.5, 7.0, 40.0] {
            assert!(rel(upper_incomplete_gamma(1.0, x).unwrap(), (-x).exp()) < 1e-14);
        }
        assert!(rel(upper_incomplete_gamma(2.0, 3.0).unwrap(), 4.0 * (-3.0f64).exp()) < 1e-14);
        // Gamma(2, x) = (x + 1) e^{-x} on the continued-fraction branch
        assert!(rel(upper_incomplete_gamma(2.0, 9.0).unwrap(), 10.0 * (-9.0f64).exp()) < 1e-14);
        // Gamma(1/2, x) = sqrt(pi) erfc(sqrt(x))
        let pi = std::f64::consts::PI;
        for x in [0.2f64, 1.0, 4.0, 30.0] {
            let expect = pi.sqrt() * erfc(x.sqrt());
            assert!(rel(upper_incomplete_gamma(0.5, x).unwrap(), expect) < 1e-13, "x={x}");
        }
    }

    #[test]
    fn incomplete_gamma_tail_ratio() {
        for a in [0.5, 1.5, 3.0] {
            let mut prev = f64::INFINITY;
            for x in [20.0, 80.0, 300.0] {
                let r = upper_incomplete_gamma(a, x).unwrap() / (x.powf(a - 1.0) * (-x).exp());
                let gap = (r - 1.0).abs();
                assert!(gap < prev);
                assert!(gap <= (a - 1.0).abs() / x * 1.2 + 1e-12);
                prev = gap;
            }
        }
    }

    #[test]
    fn incomplete_gamma_domain() {
        assert!(upper_incomplete_gamma(0.0, 1.0).is_err());
        assert!(upper_incomplete_gamma(1.0, -1.0).is_err());
    }

    #[test]
    fn reciprocal_gamma_poles() {
        assert_eq!(rgamma(0.0), 0.0);
        assert_eq!(rgamma(-3.0), 0.0);
        assert!(rel(rgamma(5.0), 1.0 / 24.0) < 1e-15);
        assert!(rgamma(-0.5) < 0.0);
    }
}
