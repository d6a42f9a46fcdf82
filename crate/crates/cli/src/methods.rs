use bessel_heat::kernels::{
    bracket_kernel, classify_regime_with, envelope_sharp, evaluate_asymptotic_with, exact_half_kernel,
    hunt_kernel, reflect_index, Regime, QSource,
};
use bessel_heat::montecarlo::{estimate_kernel_bridge, BridgeConfig};
use bessel_heat::Error;
use clap::ValueEnum;
use serde::Serialize;

use crate::settings::Settings;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Asymptotic,
    ExactHalf,
    Hunt,
    Bracket,
    Mc,
    Envelope,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Asymptotic => "asymptotic",
            Method::ExactHalf => "exact-half",
            Method::Hunt => "hunt",
            Method::Bracket => "bracket",
            Method::Mc => "mc",
            Method::Envelope => "envelope",
        }
    }

    /// Rejects index values the method has no formula for.
    pub fn check_index(&self, mu: f64) -> Result<(), CliError> {
        match self {
            Method::ExactHalf | Method::Hunt if mu != 0.5 => Err(CliError::Spec(format!(
                "method {} needs mu = 0.5, got {mu}",
                self.name()
            ))),
            _ => Ok(()),
        }
    }
}

/// One output row. Column order is the CSV header order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub mu: f64,
    pub a: f64,
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub method: &'static str,
    pub value: Option<f64>,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub regime: Option<&'static str>,
    pub error_scale: Option<f64>,
    pub status: String,
}

pub const CSV_HEADER: [&str; 12] = [
    "mu", "a", "t", "x", "y", "method", "value", "lower", "upper", "regime", "error_scale", "status",
];

impl Record {
    pub fn csv_fields(&self) -> Vec<String> {
        let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
        vec![
            self.mu.to_string(),
            self.a.to_string(),
            self.t.to_string(),
            self.x.to_string(),
            self.y.to_string(),
            self.method.to_string(),
            opt(self.value),
            opt(self.lower),
            opt(self.upper),
            self.regime.unwrap_or("").to_string(),
            opt(self.error_scale),
            self.status.clone(),
        ]
    }
}

fn status_of(e: &Error) -> String {
    match e {
        Error::Domain(_) => "domain",
        Error::SeriesBudget { .. } => "series_budget",
        Error::Overflow(_) => "overflow",
        Error::PrecisionLoss { .. } => "precision_loss",
        Error::Quadrature { .. } => "quadrature",
        Error::CatastrophicSubtraction { .. } => "catastrophic_subtraction",
        Error::UnsupportedIndex(_) => "unsupported_index",
        Error::Budget { .. } => "budget",
    }
    .to_string()
}

struct Values {
    value: Option<f64>,
    lower: Option<f64>,
    upper: Option<f64>,
    error_scale: Option<f64>,
}

fn point(v: f64) -> Values {
    Values { value: Some(v), lower: None, upper: None, error_scale: None }
}

/// Evaluates one grid point. Numerical failures land in `status`.
pub fn evaluate(method: Method, mu: f64, a: f64, t: f64, x: f64, y: f64, s: &Settings) -> Record {
    let regime = classify_regime_with(mu, a, t, x, y, s.u_floor).ok();
    let mut rec = Record {
        mu,
        a,
        t,
        x,
        y,
        method: method.name(),
        value: None,
        lower: None,
        upper: None,
        regime: regime.map(|r| r.as_str()),
        error_scale: None,
        status: "ok".into(),
    };
    if method == Method::Asymptotic && regime == Some(Regime::NonAsymptotic) {
        rec.status = Regime::NonAsymptotic.as_str().into();
        return rec;
    }
    match compute(method, mu, a, t, x, y, s) {
        Ok(v) => {
            rec.value = v.value;
            rec.lower = v.lower;
            rec.upper = v.upper;
            rec.error_scale = v.error_scale;
        }
        Err(e) => rec.status = status_of(&e),
    }
    rec
}

fn compute(method: Method, mu: f64, a: f64, t: f64, x: f64, y: f64, s: &Settings) -> bessel_heat::Result<Values> {
    match method {
        Method::Asymptotic => {
            let e = evaluate_asymptotic_with(mu, a, t, x, y, s.order, s.u_floor)?;
            Ok(Values { error_scale: Some(e.error_scale), ..point(e.value) })
        }
        Method::ExactHalf => Ok(point(exact_half_kernel(a, t, x, y)?)),
        Method::Hunt => {
            let spec = s.quadrature().unwrap_or_default();
            let h = hunt_kernel(mu, a, t, x, y, QSource::ExactHalf, &spec)?;
            Ok(Values { error_scale: Some(spec.rel_tol * h.free / h.value.max(f64::MIN_POSITIVE)), ..point(h.value) })
        }
        Method::Bracket => {
            let lo = reflect_index(mu, a, t, x, y, |m, a, t, x, y| Ok(bracket_kernel(m, a, t, x, y)?.lower.unwrap_or(0.0)))?;
            let hi = reflect_index(mu, a, t, x, y, |m, a, t, x, y| Ok(bracket_kernel(m, a, t, x, y)?.upper))?;
            Ok(Values {
                value: Some(0.5 * (lo + hi)),
                lower: Some(lo),
                upper: Some(hi),
                error_scale: Some((hi - lo) / (hi + lo)),
            })
        }
        Method::Mc => {
            let cfg = BridgeConfig { paths: s.paths, grid_points: s.grid_points, seed: s.seed };
            let e = estimate_kernel_bridge(&[mu], a, t, x, y, &cfg)?.remove(0);
            Ok(Values {
                value: Some(e.value),
                lower: Some((e.value - 3.0 * e.std_err).max(0.0)),
                upper: Some(e.value + 3.0 * e.std_err),
                error_scale: Some(e.weight_std_err / e.weight),
            })
        }
        Method::Envelope => Ok(point(envelope_sharp(mu, a, t, x, y)?)),
    }
}
