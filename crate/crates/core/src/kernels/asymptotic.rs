use super::exact::{leading_term, series_correction};
use super::{ExpansionEval, KernelQuery, Regime};
use crate::error::{domain, Result};
use crate::specfun::t0;

/// Default lower limit on `xy/t` below which no expansion is used.
pub const DEFAULT_U_FLOOR: f64 = 10.0;

/// [`classify_regime_with`] at the default floor.
pub fn classify_regime(mu: f64, a: f64, t: f64, x: f64, y: f64) -> Result<Regime> {
    classify_regime_with(mu, a, t, x, y, DEFAULT_U_FLOOR)
}

/// Regime of a query after ordering `x <= y`. The long-time boundaries
/// `t = a^2 t0` and `v = 1` are inclusive.
pub fn classify_regime_with(mu: f64, a: f64, t: f64, x: f64, y: f64, u_floor: f64) -> Result<Regime> {
    let q = KernelQuery::new(a, t, x, y)?.symmetrized();
    if q.u() < u_floor {
        return Ok(Regime::NonAsymptotic);
    }
    if t < a * a * t0(mu) {
        return Ok(Regime::ShortTime);
    }
    if q.x > 2.0 * a {
        return Ok(Regime::LongInterior);
    }
    if q.y <= 2.0 * a {
        return Ok(Regime::NonAsymptotic);
    }
    Ok(if q.v() >= 1.0 {
        Regime::LongBoundaryTight
    } else {
        Regime::LongBoundaryDeep
    })
}

/// [`evaluate_asymptotic_with`] at the default floor.
pub fn evaluate_asymptotic(mu: f64, a: f64, t: f64, x: f64, y: f64, n: usize) -> Result<ExpansionEval> {
    evaluate_asymptotic_with(mu, a, t, x, y, n, DEFAULT_U_FLOOR)
}

/// Asymptotic value of the killed kernel in the regime of the query.
/// `n` is the number of terms used in the interior expansion.
pub fn evaluate_asymptotic_with(
    mu: f64,
    a: f64,
    t: f64,
    x: f64,
    y: f64,
    n: usize,
    u_floor: f64,
) -> Result<ExpansionEval> {
    if n < 1 {
        return domain("expansion order must be at least 1");
    }
    let regime = classify_regime_with(mu, a, t, x, y, u_floor)?;
    if regime == Regime::NonAsymptotic {
        return domain(format!(
            "no expansion applies at (mu={mu}, a={a}, t={t}, x={x}, y={y}); use hunt_kernel or Monte Carlo"
        ));
    }
    let eval = evaluate_in(regime, mu.abs(), a, t, x, y, n)?;
    Ok(reflected(eval, mu, x, y))
}

fn reflected(mut eval: ExpansionEval, mu: f64, x: f64, y: f64) -> ExpansionEval {
    if mu < 0.0 {
        let f = (x * y).powf(-2.0 * mu);
        eval.value *= f;
        eval.leading *= f;
    }
    eval
}

fn evaluate_in(regime: Regime, mu: f64, a: f64, t: f64, x: f64, y: f64, n: usize) -> Result<ExpansionEval> {
    let leading = leading_term(mu, a, t, x, y)?;
    let r = t / (x * y);
    let (correction, error_scale, order_n) = match regime {
        Regime::ShortTime => (0.0, t / (a * a), 1),
        Regime::LongInterior => (series_correction(mu, r, n), r.powi(n as i32), n),
        Regime::LongBoundaryTight => ((1.0 - 4.0 * mu * mu) / 8.0 * r, r * r, 2),
        Regime::LongBoundaryDeep => (0.0, r, 1),
        Regime::NonAsymptotic => unreachable!(),
    };
    Ok(ExpansionEval {
        value: leading * (1.0 + correction),
        leading,
        correction,
        error_scale,
        regime: Some(regime),
        order_n,
    })
}

fn long_time(mu: f64, a: f64, t: f64) -> Result<()> {
    let bound = a * a * t0(mu);
    if t < bound {
        return domain(format!("long-time expansion needs t >= a^2 t0(mu) = {bound}, got t = {t}"));
    }
    Ok(())
}

/// Interior expansion with `n` terms; requires `t >= a^2 t0(mu)` and
/// `x, y > 2a`.
pub fn expansion_interior(mu: f64, a: f64, t: f64, x: f64, y: f64, n: usize) -> Result<ExpansionEval> {
    let q = KernelQuery::new(a, t, x, y)?.symmetrized();
    if n < 1 {
        return domain("expansion order must be at least 1");
    }
    long_time(mu, a, t)?;
    if !(q.x > 2.0 * a) {
        return domain(format!("interior expansion needs x, y > 2a = {}, got min = {}", 2.0 * a, q.x));
    }
    let eval = evaluate_in(Regime::LongInterior, mu.abs(), a, t, x, y, n)?;
    Ok(reflected(eval, mu, x, y))
}

/// First-order boundary expansion; requires `t >= a^2 t0(mu)`,
/// `a < min(x,y) < 2a < max(x,y)` and `(x-a)(y-a)/t >= 1`.
pub fn expansion_boundary(mu: f64, a: f64, t: f64, x: f64, y: f64) -> Result<ExpansionEval> {
    let q = KernelQuery::new(a, t, x, y)?.symmetrized();
    long_time(mu, a, t)?;
    if !(q.x < 2.0 * a && q.y > 2.0 * a) {
        return domain(format!(
            "boundary expansion needs min(x,y) < 2a < max(x,y), got ({}, {}) with 2a = {}",
            q.x,
            q.y,
            2.0 * a
        ));
    }
    if q.v() < 1.0 {
        return domain(format!("boundary expansion needs (x-a)(y-a)/t >= 1, got {}", q.v()));
    }
    let eval = evaluate_in(Regime::LongBoundaryTight, mu.abs(), a, t, x, y, 2)?;
    Ok(reflected(eval, mu, x, y))
}
