//! Self-check suites with measured maxima.

use std::f64::consts::PI;

use bessel_heat::hitting::{q_bounds, q_half_exact};
use bessel_heat::kernels::*;
use bessel_heat::montecarlo::{estimate_hitting_mc, McConfig};
use bessel_heat::quadrature::*;
use bessel_heat::specfun::{bessel_i_asym, bessel_i_series, bessel_k, bessel_k_reflection, coeff_c, SeriesControl};
use clap::ValueEnum;

use crate::settings::Settings;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Specfun,
    Quadrature,
    Identities,
    Brackets,
    Mc,
    All,
}

#[derive(Clone)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.measured <= self.tolerance
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

fn check(suite: &'static str, name: &str, measured: f64, tolerance: f64) -> Check {
    // a failed evaluation is reported as an infinite error
    let measured = if measured.is_nan() { f64::INFINITY } else { measured };
    Check { suite, name: name.into(), measured, tolerance }
}

pub fn run(suite: Suite, s: &Settings) -> Vec<Check> {
    match suite {
        Suite::Specfun => specfun(),
        Suite::Quadrature => quadrature(s),
        Suite::Identities => identities(),
        Suite::Brackets => brackets(),
        Suite::Mc => mc(s),
        Suite::All => [specfun(), quadrature(s), identities(), brackets(), mc(s)].concat(),
    }
}

fn specfun() -> Vec<Check> {
    let ctl = SeriesControl::default();
    let mut ratio = 0.0f64;
    for mu in [0.0, 0.7, 1.0, 2.0, 3.0] {
        for z in [30.0, 100.0, 300.0] {
            let series = bessel_i_series(mu, z, &ctl).unwrap_or(f64::NAN);
            for n in 1..=4 {
                let asym = bessel_i_asym(mu, z, n).map(|v| v.0).unwrap_or(f64::NAN);
                let bound = 2.0 * coeff_c(mu, n).abs() / z.powi(n as i32) * z.exp() / (2.0 * PI * z).sqrt();
                ratio = ratio.max((series - asym).abs() / bound);
            }
        }
    }
    let mut kgap = 0.0f64;
    for mu in [0.3, 0.7, 1.4, 2.6] {
        for z in [0.1, 0.5, 1.0, 2.0, 4.0] {
            if let Ok(r) = bessel_k_reflection(mu, z) {
                kgap = kgap.max(rel(bessel_k(mu, z).unwrap_or(f64::NAN), r));
            }
        }
    }
    let half = (1..=30)
        .map(|i| {
            let z = i as f64 * 0.5;
            rel(bessel_k(0.5, z).unwrap_or(f64::NAN), (PI / (2.0 * z)).sqrt() * (-z).exp())
        })
        .fold(0.0, f64::max);
    vec![
        check("specfun", "large-argument remainder / bound", ratio, 1.0),
        check("specfun", "K vs reflection formula, max rel err", kgap, 1e-8),
        check("specfun", "K_1/2 closed form, max rel err", half, 1e-13),
    ]
}

fn quadrature(s: &Settings) -> Vec<Check> {
    let spec = s.quadrature().unwrap_or_default();
    let pits = [0.1, 0.5, 1.0, 2.0, 5.0];
    let (mut m12, mut m32) = (0.0f64, 0.0f64);
    for &a in &pits {
        for &b in &pits {
            for t in [0.5, 1.0, 4.0] {
                let f = SingularIntegrand::heat(a, b, t).unwrap();
                m12 = m12.max(rel(integrate_singular(&f, &spec).unwrap_or(f64::NAN), closed_mu12(a, b, t).unwrap()));
                let g = SingularIntegrand::new(a, b, t, -0.5, -0.5).unwrap();
                m32 = m32.max(rel(integrate_singular(&g, &spec).unwrap_or(f64::NAN), closed_mu32(a, b, t).unwrap()));
            }
        }
    }
    let mut mk = 0.0f64;
    for mu in [0.0, 0.3, 0.5, 1.0, 2.7] {
        for c in [0.5, 1.0, 4.0] {
            for d in [0.5, 1.0, 4.0] {
                let k = k_integral(mu, c, d).unwrap_or(f64::NAN);
                mk = mk.max(rel(laplace_type_integral(mu, c, d, &spec).unwrap_or(f64::NAN), k));
            }
        }
    }
    vec![
        check("quadrature", "mu12 grid max relative error", m12, 1e-8),
        check("quadrature", "mu32 grid max relative error", m32, 1e-8),
        check("quadrature", "K-integral grid max relative error", mk, 1e-8),
    ]
}

fn identities() -> Vec<Check> {
    let pts = [1.2, 1.7, 2.5, 4.0, 7.0];
    let (mut sym, mut fac, mut add, mut two) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for t in [0.1, 0.5, 2.0] {
        for &x in &pts {
            for &y in &pts {
                for mu in [-1.3, 0.0, 0.5, 1.0, 2.2] {
                    sym = sym.max(rel(free_kernel(mu, t, x, y).unwrap(), free_kernel(mu, t, y, x).unwrap()));
                    sym = sym.max(rel(leading_term(mu, 1.0, t, x, y).unwrap(), leading_term(mu, 1.0, t, y, x).unwrap()));
                    let g = leading_term(mu, 1.0, t, x, y).unwrap();
                    fac = fac.max(rel(g, (x * y).powf(0.5 - mu) * exact_half_kernel(1.0, t, x, y).unwrap()));
                }
                let free = free_kernel(0.5, t, x, y).unwrap();
                let parts = exact_half_kernel(1.0, t, x, y).unwrap() + exact_half_r(1.0, t, x, y).unwrap();
                add = add.max((free - parts).abs() / free);
                let r = rescale(0.5, 2.0, 4.0 * t, 2.0 * x, 2.0 * y).unwrap();
                two = two.max(rel(
                    exact_half_kernel(2.0, 4.0 * t, 2.0 * x, 2.0 * y).unwrap(),
                    r.factor * exact_half_kernel(1.0, r.t, r.x, r.y).unwrap(),
                ));
            }
        }
    }
    let spec = QuadratureSpec::new(1e-11, 1e-300, 60).unwrap();
    let f = |z: f64| exact_half_kernel(1.0, 0.5, 2.0, z).unwrap() * exact_half_kernel(1.0, 0.5, z, 3.0).unwrap() * z * z;
    let ck = integrate_interval(f, 1.0, 4.0, &spec).map(|e| e.value).unwrap_or(f64::NAN)
        + integrate_tail(f, 4.0, 1.0, &spec).map(|e| e.value).unwrap_or(f64::NAN);
    vec![
        check("identities", "symmetry max rel err", sym, 1e-13),
        check("identities", "leading-term factorization max rel err", fac, 1e-14),
        check("identities", "Hunt additivity at mu=1/2 max rel err", add, 1e-14),
        check("identities", "two-scale identity at mu=1/2 max rel err", two, 1e-13),
        check("identities", "Chapman-Kolmogorov at mu=1/2 rel err", rel(ck, exact_half_kernel(1.0, 1.0, 2.0, 3.0).unwrap()), 1e-6),
    ]
}

fn brackets() -> Vec<Check> {
    let pts = [1.05, 1.5, 2.0, 3.0, 6.0, 10.0];
    let mut outside = 0.0;
    for mu in [0.0, 0.3, 1.0, 2.0] {
        for t in [0.01, 0.1, 0.5] {
            for &x in &pts {
                for &y in &pts {
                    if let Ok(e) = evaluate_asymptotic(mu, 1.0, t, x, y, 2) {
                        let b = bracket_kernel(mu, 1.0, t, x, y).unwrap();
                        let w = 1.0 + e.error_scale;
                        if e.value < b.lower.unwrap() / w || e.value > b.upper * w {
                            outside += 1.0;
                        }
                    }
                }
            }
        }
    }
    let spec = QuadratureSpec::new(1e-12, 1e-300, 60).unwrap();
    let mut hunt = 0.0f64;
    for t in [0.25, 1.0, 4.0] {
        for &x in &[1.5, 2.0, 5.0] {
            for &y in &[1.5, 2.0, 5.0] {
                let h = hunt_kernel(0.5, 1.0, t, x, y, QSource::ExactHalf, &spec).map(|h| h.value).unwrap_or(f64::NAN);
                let b = bracket_kernel(0.5, 1.0, t, x, y).unwrap();
                hunt = hunt.max(rel(h, b.upper));
            }
        }
    }
    let mut q_out = 0.0;
    for &x in &[1.1, 2.0, 5.0] {
        for s in [0.1, 1.0, 10.0] {
            let b = q_bounds(0.0, x, s).unwrap();
            let v = q_half_exact(1.0, x, s).unwrap();
            // the index-0 density exceeds the index-1/2 one by sqrt(x)
            if v * x.sqrt() < b.lower.unwrap() * (1.0 - 1e-14) || v * x.sqrt() > b.upper * (1.0 + 1e-14) {
                q_out += 1.0;
            }
        }
    }
    vec![
        check("brackets", "short-time expansions outside widened bracket", outside, 0.0),
        check("brackets", "Hunt kernel vs degenerate bracket at mu=1/2", hunt, 1e-8),
        check("brackets", "hitting bound shape violations", q_out, 0.0),
    ]
}

fn mc(s: &Settings) -> Vec<Check> {
    let bins = (0..=16).map(|k| k as f64 / 16.0).collect();
    let cfg = McConfig::new(s.paths, s.step, s.seed).with_bins(bins);
    let spec = QuadratureSpec::default();
    let q = |v: f64| q_half_exact(1.0, 2.0, v).unwrap();
    let (mut populated, mut outside) = (0.0, 0.0);
    let mut kill_z = f64::INFINITY;
    if let Ok(e) = estimate_hitting_mc(0.5, 2.0, 1.0, 1.0, &cfg) {
        for k in 0..e.values.len() {
            if e.counts[k] < 200 {
                continue;
            }
            populated += 1.0;
            let (lo, hi) = (e.bin_edges[k], e.bin_edges[k + 1]);
            let avg = integrate_interval(q, lo, hi, &spec).map(|r| r.value).unwrap_or(f64::NAN) / (hi - lo);
            if !((e.values[k] - avg).abs() <= 3.0 * e.std_errors[k]) {
                outside += 1.0;
            }
        }
        let kill = integrate_interval(q, 0.0, 1.0, &spec).map(|r| r.value).unwrap_or(f64::NAN);
        kill_z = ((e.kill_fraction - kill) / e.kill_std_err).abs();
    }
    let frac = if populated > 0.0 { outside / populated } else { f64::INFINITY };
    vec![
        check("mc", "hitting histogram: fraction of bins beyond 3 sigma", frac, 0.05),
        check("mc", "kill fraction |z-score|", kill_z, 3.0),
    ]
}
