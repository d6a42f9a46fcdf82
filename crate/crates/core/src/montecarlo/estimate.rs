use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::step::{Outcome, Stepper};
use super::{check_edges, McConfig, Scheme};
use crate::error::Result;

const BLOCK: u64 = 4096;

/// Raw simulation output in path order.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSamples {
    pub paths: u64,
    /// Terminal positions of surviving paths.
    pub survivors: Vec<f64>,
    /// Kill times of the other paths.
    pub hitting_times: Vec<f64>,
}

/// Run description attached to an estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McMeta {
    pub mu: f64,
    pub a: f64,
    pub x0: f64,
    pub t: f64,
    pub paths: u64,
    pub effective_paths: u64,
    pub step: f64,
    pub seed: u64,
    pub scheme: Scheme,
    pub bridge_correction: bool,
}

/// Binned density estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityEstimate {
    pub bin_edges: Vec<f64>,
    pub bin_centers: Vec<f64>,
    /// Kernel estimates are per unit of `y^(2mu+1) dy`, hitting estimates
    /// per unit time.
    pub values: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub counts: Vec<u64>,
    /// Reference mass of each bin.
    pub bin_mass: Vec<f64>,
    pub kill_fraction: f64,
    pub kill_std_err: f64,
    pub meta: McMeta,
}

impl DensityEstimate {
    /// Estimated probability inside the bins plus the killed fraction.
    pub fn total_mass(&self) -> f64 {
        let inside: f64 = self.values.iter().zip(&self.bin_mass).map(|(v, m)| v * m).sum();
        inside + self.kill_fraction
    }

    /// `sum of std_err * bin_mass`.
    pub fn mass_std_err(&self) -> f64 {
        self.std_errors.iter().zip(&self.bin_mass).map(|(s, m)| s * m).sum()
    }
}

/// 64 geometric bins over `(a, a + 8 sqrt(t) + |x0 - a|)`.
pub fn default_kernel_bins(a: f64, x0: f64, t: f64) -> Vec<f64> {
    let hi = a + 8.0 * t.sqrt() + (x0 - a).abs();
    let r = (hi / a).powf(1.0 / 64.0);
    let mut edges: Vec<f64> = (0..=64).map(|k| a * r.powi(k)).collect();
    edges[0] = a;
    edges[64] = hi;
    edges
}

/// 64 equal bins over `(0, horizon]`.
pub fn default_hitting_bins(horizon: f64) -> Vec<f64> {
    (0..=64).map(|k| horizon * k as f64 / 64.0).collect()
}

fn path_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Runs every path and folds outcomes into per-block accumulators, merged
/// in block order.
#[allow(clippy::too_many_arguments)]
fn fold_paths<A, I, F, M>(mu: f64, x0: f64, a: f64, t: f64, cfg: &McConfig, init: I, fold: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, Outcome) + Sync,
    M: Fn(&mut A, A),
{
    let stepper = Stepper::new(mu, a, t, cfg);
    let blocks = cfg.paths.div_ceil(BLOCK);
    let parts: Vec<A> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = init();
            for p in b * BLOCK..((b + 1) * BLOCK).min(cfg.paths) {
                let mut rng = path_rng(cfg.seed, p);
                fold(&mut acc, stepper.run(x0, &mut rng));
            }
            acc
        })
        .collect();
    let mut total = init();
    for part in parts {
        merge(&mut total, part);
    }
    total
}

/// Simulates all paths and returns survivors and kill times in path order.
pub fn simulate_paths(mu: f64, x0: f64, a: f64, t: f64, cfg: &McConfig) -> Result<PathSamples> {
    cfg.validate(mu, a, x0, t)?;
    let (survivors, hitting_times) = fold_paths(
        mu,
        x0,
        a,
        t,
        cfg,
        || (Vec::new(), Vec::new()),
        |acc: &mut (Vec<f64>, Vec<f64>), o| match o {
            Outcome::Survived(y) => acc.0.push(y),
            Outcome::Killed(s) => acc.1.push(s),
        },
        |tot, part| {
            tot.0.extend(part.0);
            tot.1.extend(part.1);
        },
    );
    Ok(PathSamples { paths: cfg.paths, survivors, hitting_times })
}

struct Counts {
    bins: Vec<u64>,
    killed: u64,
}

fn bin_of(edges: &[f64], v: f64) -> Option<usize> {
    let i = edges.partition_point(|&e| e < v);
    (i > 0 && i < edges.len()).then(|| i - 1)
}

fn count(
    mu: f64,
    x0: f64,
    a: f64,
    t: f64,
    cfg: &McConfig,
    edges: &[f64],
    hitting: bool,
) -> Counts {
    let n = edges.len() - 1;
    fold_paths(
        mu,
        x0,
        a,
        t,
        cfg,
        || Counts { bins: vec![0; n], killed: 0 },
        |acc: &mut Counts, o| {
            let sample = match o {
                Outcome::Survived(y) => (!hitting).then_some(y),
                Outcome::Killed(s) => {
                    acc.killed += 1;
                    hitting.then_some(s)
                }
            };
            if let Some(i) = sample.and_then(|v| bin_of(edges, v)) {
                acc.bins[i] += 1;
            }
        },
        |tot, part| {
            tot.killed += part.killed;
            for (a, b) in tot.bins.iter_mut().zip(part.bins) {
                *a += b;
            }
        },
    )
}

#[allow(clippy::too_many_arguments)]
fn build(
    mu: f64,
    x0: f64,
    a: f64,
    t: f64,
    cfg: &McConfig,
    edges: Vec<f64>,
    bin_mass: Vec<f64>,
    counts: Counts,
    centers: Vec<f64>,
) -> DensityEstimate {
    let n = cfg.paths as f64;
    let (values, std_errors) = counts
        .bins
        .iter()
        .zip(&bin_mass)
        .map(|(&c, &m)| {
            let p = c as f64 / n;
            // a zero count is charged as one hit for the error bar
            let pe = (c.max(1)) as f64 / n;
            (p / m, (pe * (1.0 - pe) / n).sqrt() / m)
        })
        .unzip();
    let kf = counts.killed as f64 / n;
    DensityEstimate {
        bin_centers: centers,
        bin_edges: edges,
        values,
        std_errors,
        counts: counts.bins,
        bin_mass,
        kill_fraction: kf,
        kill_std_err: (kf * (1.0 - kf) / n).sqrt(),
        meta: McMeta {
            mu,
            a,
            x0,
            t,
            paths: cfg.paths,
            effective_paths: cfg.paths,
            step: cfg.step,
            seed: cfg.seed,
            scheme: cfg.scheme,
            bridge_correction: cfg.bridge_correction,
        },
    }
}

/// Killed transition density from `x0` at time `t`, per unit of
/// `y^(2mu+1) dy`, on the bins of `cfg` (default: [`default_kernel_bins`]).
pub fn estimate_kernel_mc(mu: f64, x0: f64, a: f64, t: f64, cfg: &McConfig) -> Result<DensityEstimate> {
    cfg.validate(mu, a, x0, t)?;
    let edges = cfg.bins.clone().unwrap_or_else(|| default_kernel_bins(a, x0, t));
    check_edges(&edges, a)?;
    let p = 2.0 * mu + 2.0;
    let mass = edges.windows(2).map(|w| (w[1].powf(p) - w[0].powf(p)) / p).collect();
    let centers = edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    let counts = count(mu, x0, a, t, cfg, &edges, false);
    Ok(build(mu, x0, a, t, cfg, edges, mass, counts, centers))
}

/// Density of the hitting time of `a` from `x0` on `(0, horizon]`,
/// normalised per simulated path.
pub fn estimate_hitting_mc(mu: f64, x0: f64, a: f64, horizon: f64, cfg: &McConfig) -> Result<DensityEstimate> {
    cfg.validate(mu, a, x0, horizon)?;
    let edges = cfg.bins.clone().unwrap_or_else(|| default_hitting_bins(horizon));
    check_edges(&edges, 0.0)?;
    let width = edges.windows(2).map(|w| w[1] - w[0]).collect();
    let centers = edges.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
    let counts = count(mu, x0, a, horizon, cfg, &edges, true);
    Ok(build(mu, x0, a, horizon, cfg, edges, width, counts, centers))
}
