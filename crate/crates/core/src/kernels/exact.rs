use super::{ExpansionEval, KernelQuery};
use crate::error::{domain, Result};
use crate::specfun::{bessel_i_scaled, coeff_c};

use std::f64::consts::PI;

fn gauss(d: f64, t: f64) -> f64 {
    (-d * d / (2.0 * t)).exp()
}

/// Free Bessel kernel
/// `p(t,x,y) = (xy)^(-mu)/t exp(-(x^2+y^2)/2t) I_|mu|(xy/t)`,
/// composed as `exp(-(x-y)^2/2t) * [e^{-z} I(z)]` so it never overflows.
pub fn free_kernel(mu: f64, t: f64, x: f64, y: f64) -> Result<f64> {
    if !(t > 0.0) || !(x > 0.0) || !(y > 0.0) {
        return domain(format!("free kernel needs t, x, y > 0 (t={t}, x={x}, y={y})"));
    }
    let xy = x * y;
    let z = xy / t;
    let d = x - y;
    let scaled = bessel_i_scaled(mu.abs(), z)?;
    let log = -mu * xy.ln() - t.ln() - d * d / (2.0 * t);
    Ok(log.exp() * scaled)
}

/// Large-`xy/t` expansion of the free kernel with `n` terms
/// (`n - 1` corrections). Errors below `u_floor`.
pub fn free_kernel_expansion(
    mu: f64,
    t: f64,
    x: f64,
    y: f64,
    n: usize,
    u_floor: f64,
) -> Result<ExpansionEval> {
    if !(t > 0.0) || !(x > 0.0) || !(y > 0.0) || n < 1 {
        return domain(format!("free expansion needs t, x, y > 0, n >= 1 (t={t}, x={x}, y={y}, n={n})"));
    }
    let u = x * y / t;
    if u < u_floor {
        return domain(format!("xy/t = {u} is below the expansion floor {u_floor}"));
    }
    let leading = (x * y).powf(-mu - 0.5) / (2.0 * PI * t).sqrt() * gauss(x - y, t);
    let correction = series_correction(mu, 1.0 / u, n);
    Ok(ExpansionEval {
        value: leading * (1.0 + correction),
        leading,
        correction,
        error_scale: u.powi(-(n as i32)),
        regime: None,
        order_n: n,
    })
}

/// `sum_{k=1}^{n-1} c_k(mu) (-r)^k`.
pub(crate) fn series_correction(mu: f64, r: f64, n: usize) -> f64 {
    let mut pow = 1.0;
    let mut s = 0.0;
    for k in 1..n {
        pow *= -r;
        s += coeff_c(mu, k) * pow;
    }
    s
}

/// Killed kernel at `mu = 1/2`:
/// `[exp(-(x-y)^2/2t) - exp(-(x+y-2a)^2/2t)] / (xy sqrt(2 pi t))`.
pub fn exact_half_kernel(a: f64, t: f64, x: f64, y: f64) -> Result<f64> {
    let q = KernelQuery::new(a, t, x, y)?;
    Ok(half_kernel_unchecked(&q))
}

// (x+y-2a)^2 - (x-y)^2 = 4(x-a)(y-a), so the difference factors through expm1.
pub(crate) fn half_kernel_unchecked(q: &KernelQuery) -> f64 {
    let boundary = -(-2.0 * q.v()).exp_m1();
    gauss(q.x - q.y, q.t) * boundary / (q.x * q.y * (2.0 * PI * q.t).sqrt())
}

/// The subtracted Hunt term at `mu = 1/2`:
/// `[exp(-(x+y-2a)^2/2t) - exp(-(x+y)^2/2t)] / (xy sqrt(2 pi t))`.
pub fn exact_half_r(a: f64, t: f64, x: f64, y: f64) -> Result<f64> {
    let q = KernelQuery::new(a, t, x, y)?;
    let s = x + y - 2.0 * a;
    // (x+y)^2 - (x+y-2a)^2 = 4a(x+y-a)
    let inner = -(-2.0 * a * (x + y - a) / t).exp_m1();
    Ok(gauss(s, t) * inner / (q.x * q.y * (2.0 * PI * t).sqrt()))
}

/// Leading term `g(t,x,y) = (xy)^(-mu-1/2) / sqrt(2 pi t)
/// exp(-(x-y)^2/2t) (1 - exp(-2(x-a)(y-a)/t))`, implemented as
/// `(xy)^(1/2-mu)` times the `mu = 1/2` kernel.
pub fn leading_term(mu: f64, a: f64, t: f64, x: f64, y: f64) -> Result<f64> {
    let q = KernelQuery::new(a, t, x, y)?;
    Ok((x * y).powf(0.5 - mu) * half_kernel_unchecked(&q))
}

/// Comparison quantity
/// `min(1, (x-a)(y-a)/t) (xy)^(-mu-1/2) / sqrt(t) exp(-(x-y)^2/2t)`,
/// valid for `xy >= t`.
pub fn envelope_sharp(mu: f64, a: f64, t: f64, x: f64, y: f64) -> Result<f64> {
    let q = KernelQuery::new(a, t, x, y)?;
    if x * y < t {
        return domain(format!("envelope needs xy >= t (xy={}, t={t})", x * y));
    }
    Ok(q.v().min(1.0) * (x * y).powf(-mu - 0.5) / t.sqrt() * gauss(x - y, t))
}

/// Negative-index reflection `p^(mu) = (xy)^(-2 mu) p^(-mu)`: for `mu < 0`
/// the evaluator is called at `|mu|` and the result multiplied by
/// `(xy)^(2|mu|)`; for `mu >= 0` it is called unchanged.
pub fn reflect_index<F>(mu: f64, a: f64, t: f64, x: f64, y: f64, evaluator: F) -> Result<f64>
where
    F: Fn(f64, f64, f64, f64, f64) -> Result<f64>,
{
    if mu >= 0.0 {
        evaluator(mu, a, t, x, y)
    } else {
        Ok((x * y).powf(-2.0 * mu) * evaluator(-mu, a, t, x, y)?)
    }
}

/// Normalized coordinates and factor for `p_a(t,x,y) = factor * p_1(t', x', y')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rescaled {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub factor: f64,
}

/// Reduction to the unit barrier. With the reference measure
/// `y^(2mu+1) dy` the factor is `a^(-2mu-2)`.
pub fn rescale(mu: f64, a: f64, t: f64, x: f64, y: f64) -> Result<Rescaled> {
    if !(a > 0.0) {
        return domain(format!("barrier must be positive, got {a}"));
    }
    Ok(Rescaled {
        t: t / (a * a),
        x: x / a,
        y: y / a,
        factor: a.powf(-2.0 * mu - 2.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn free_half_closed_form() {
        let (t, x, y) = (1.0, 2.0, 3.0);
        let expect = (gauss(x - y, t) - gauss(x + y, t)) / (x * y * (2.0 * PI * t).sqrt());
        assert!(rel(free_kernel(0.5, t, x, y).unwrap(), expect) < 1e-14);
    }

    #[test]
    fn free_symmetric() {
        for (mu, t, x, y) in [(0.0, 1.0, 1.3, 4.0), (2.7, 0.2, 5.0, 0.4), (-0.8, 3.0, 2.0, 9.0)] {
            assert_eq!(free_kernel(mu, t, x, y).unwrap(), free_kernel(mu, t, y, x).unwrap());
        }
    }

    #[test]
    fn free_far_tail_does_not_overflow() {
        let v = free_kernel(1.0, 1e-3, 50.0, 50.2).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn free_expansion_examples() {
        let e = free_kernel_expansion(0.5, 0.7, 4.0, 9.0, 5, 10.0).unwrap();
        assert_eq!(e.value, e.leading);
        let e = free_kernel_expansion(0.0, 1.0, 10.0, 10.0, 2, 10.0).unwrap();
        assert!(rel(e.value, e.leading * (1.0 + 1.0 / 800.0)) < 1e-15);
        assert!(free_kernel_expansion(0.0, 1.0, 2.0, 3.0, 2, 10.0).is_err());
    }

    #[test]
    fn free_expansion_remainder() {
        let e = free_kernel_expansion(1.0, 1.0, 20.0, 30.0, 4, 10.0).unwrap();
        let exact = free_kernel(1.0, 1.0, 20.0, 30.0).unwrap();
        let gap = rel(e.value, exact);
        assert!(gap <= 2.0 * coeff_c(1.0, 4).abs() * e.error_scale, "{gap}");
    }

    #[test]
    fn half_kernel_value() {
        let v = exact_half_kernel(1.0, 1.0, 2.0, 3.0).unwrap();
        let expect = ((-0.5f64).exp() - (-4.5f64).exp()) / (6.0 * (2.0 * PI).sqrt());
        assert!(rel(v, expect) < 1e-15);
        assert!((v - 0.039_589_812_684_534_22).abs() < 1e-15);
        let near = exact_half_kernel(1.0, 1.0, 1.0 + 1e-12, 3.0).unwrap();
        assert!(near < 1e-12);
    }

    #[test]
    fn half_r_value() {
        let v = exact_half_r(1.0, 1.0, 2.0, 3.0).unwrap();
        let expect = ((-4.5f64).exp() - (-12.5f64).exp()) / (6.0 * (2.0 * PI).sqrt());
        assert!(rel(v, expect) < 1e-14);
        // vanishes faster than any power of t
        let tiny = exact_half_r(1.0, 1e-3, 2.0, 3.0).unwrap();
        assert!(tiny < 1e-300 || tiny == 0.0);
    }

    #[test]
    fn leading_term_examples() {
        let g = leading_term(0.5, 1.0, 0.3, 1.7, 4.2).unwrap();
        assert_eq!(g, exact_half_kernel(1.0, 0.3, 1.7, 4.2).unwrap());
        let g = leading_term(0.0, 1.0, 1.0, 2.0, 3.0).unwrap();
        let expect = 6f64.powf(-0.5) / (2.0 * PI).sqrt() * (-0.5f64).exp() * (1.0 - (-4.0f64).exp());
        assert!(rel(g, expect) < 1e-14);
    }

    #[test]
    fn envelope_examples() {
        let e = envelope_sharp(0.5, 1.0, 1.0, 2.0, 3.0).unwrap();
        assert!(rel(e, (-0.5f64).exp() / 6.0) < 1e-15);
        assert!(envelope_sharp(0.5, 1.0, 10.0, 1.5, 2.0).is_err());
        // linear decay at the barrier
        let e1 = envelope_sharp(1.0, 1.0, 1.0, 1.0 + 1e-3, 3.0).unwrap();
        let e2 = envelope_sharp(1.0, 1.0, 1.0, 1.0 + 2e-3, 3.0).unwrap();
        assert!((e2 / e1 - 2.0).abs() < 1e-2);
    }

    #[test]
    fn reflect_examples() {
        let half = |_m: f64, a: f64, t: f64, x: f64, y: f64| exact_half_kernel(a, t, x, y);
        let v = reflect_index(-0.5, 1.0, 1.0, 2.0, 3.0, half).unwrap();
        assert!(rel(v, 6.0 * exact_half_kernel(1.0, 1.0, 2.0, 3.0).unwrap()) < 1e-15);
        let v = reflect_index(0.0, 1.0, 1.0, 2.0, 3.0, half).unwrap();
        assert_eq!(v, exact_half_kernel(1.0, 1.0, 2.0, 3.0).unwrap());
    }

    #[test]
    fn rescale_examples() {
        let r = rescale(0.5, 2.0, 4.0, 4.0, 6.0).unwrap();
        assert_eq!((r.t, r.x, r.y), (1.0, 2.0, 3.0));
        assert_eq!(r.factor, 0.125);
        let lhs = exact_half_kernel(2.0, 4.0, 4.0, 6.0).unwrap();
        let rhs = r.factor * exact_half_kernel(1.0, 1.0, 2.0, 3.0).unwrap();
        assert!(rel(lhs, rhs) < 1e-15);
        assert_eq!(rescale(1.3, 1.0, 0.4, 2.0, 3.0).unwrap().factor, 1.0);
        assert!(rel(rescale(0.0, 3.0, 1.0, 4.0, 5.0).unwrap().factor, 1.0 / 9.0) < 1e-15);
    }
}
