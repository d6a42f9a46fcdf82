use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::kernels::leading_term;

const BLOCK: u64 = 4096;

/// Settings of the bridge estimator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BridgeConfig {
    pub paths: u64,
    /// Number of time steps; the grid `t (k/K)^2` is dense near the start.
    pub grid_points: usize,
    pub seed: u64,
}

/// Point estimate of the killed kernel at one index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BridgeEstimate {
    pub mu: f64,
    pub value: f64,
    pub std_err: f64,
    /// Conditional mean of the Girsanov weight; `value = leading * weight`.
    pub weight: f64,
    pub weight_std_err: f64,
    /// Bridges that stayed above the barrier.
    pub accepted: u64,
}

/// Pointwise estimate of the killed kernel at `(t, x, y)` for several
/// indices from one set of Brownian bridges.
///
/// The law of the index-`mu` process on `t < T_a` has density
/// `(R_t/x)^(mu-1/2) exp(-(mu^2-1/4)/2 int R^-2)` against the index-1/2
/// process, whose bridges are Brownian bridges conditioned to stay above
/// `a`. Hence `p = leading_term * E[exp(-(mu^2-1/4)/2 int_0^t R_s^-2 ds)]`
/// over such bridges. Bridges are sampled on a grid, rejected on crossing
/// (grid points or the exact in-step crossing probability), and the
/// integral is taken by the trapezoidal rule. No forward simulation is
/// involved, so kernel values far below `1/paths` are reachable.
pub fn estimate_kernel_bridge(
    mus: &[f64],
    a: f64,
    t: f64,
    x: f64,
    y: f64,
    cfg: &BridgeConfig,
) -> Result<Vec<BridgeEstimate>> {
    if !(a > 0.0) || !(t > 0.0) || !(x > a) || !(y > a) || !x.is_finite() || !y.is_finite() {
        return domain(format!("bridge estimator needs x, y > a > 0 and t > 0 (a={a}, t={t}, x={x}, y={y})"));
    }
    if cfg.paths == 0 || cfg.grid_points < 2 {
        return domain("bridge estimator needs paths >= 1 and at least two grid points");
    }
    let k = cfg.grid_points;
    let grid: Vec<f64> = (0..=k).map(|i| t * (i as f64 / k as f64).powi(2)).collect();
    let coef: Vec<f64> = mus.iter().map(|m| -(m * m - 0.25) / 2.0).collect();
    let m = mus.len();

    let blocks = cfg.paths.div_ceil(BLOCK);
    let parts: Vec<(u64, Vec<f64>, Vec<f64>)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = (0u64, vec![0.0; m], vec![0.0; m]);
            for p in b * BLOCK..((b + 1) * BLOCK).min(cfg.paths) {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(p);
                if let Some(integral) = bridge_integral(&grid, a, x, y, &mut rng) {
                    acc.0 += 1;
                    for (j, c) in coef.iter().enumerate() {
                        let w = (c * integral).exp();
                        acc.1[j] += w;
                        acc.2[j] += w * w;
                    }
                }
            }
            acc
        })
        .collect();
    let mut accepted = 0u64;
    let mut sum = vec![0.0; m];
    let mut sq = vec![0.0; m];
    for (n, s, q) in parts {
        accepted += n;
        for j in 0..m {
            sum[j] += s[j];
            sq[j] += q[j];
        }
    }
    if accepted < 2 {
        return domain("fewer than two bridges stayed above the barrier");
    }
    let n = accepted as f64;
    mus.iter()
        .enumerate()
        .map(|(j, &mu)| {
            let mean = sum[j] / n;
            let var = (sq[j] / n - mean * mean).max(0.0) * n / (n - 1.0);
            let se = (var / n).sqrt();
            let g = leading_term(mu, a, t, x, y)?;
            Ok(BridgeEstimate {
                mu,
                value: g * mean,
                std_err: g * se,
                weight: mean,
                weight_std_err: se,
                accepted,
            })
        })
        .collect()
}

/// One Brownian bridge from `x` to `y`; `None` if it touches `a`.
fn bridge_integral(grid: &[f64], a: f64, x: f64, y: f64, rng: &mut ChaCha8Rng) -> Option<f64> {
    let t = grid[grid.len() - 1];
    let mut b = x;
    let mut integral = 0.0;
    for w in grid.windows(2) {
        let (s0, s1) = (w[0], w[1]);
        let h = s1 - s0;
        let next = if s1 >= t {
            y
        } else {
            let rem = t - s0;
            let mean = b + (y - b) * h / rem;
            let sd = (h * (t - s1) / rem).sqrt();
            let z: f64 = rng.sample(StandardNormal);
            mean + sd * z
        };
        if next <= a {
            return None;
        }
        let expo = 2.0 * (b - a) * (next - a) / h;
        if expo < 50.0 && rng.random::<f64>() < (-expo).exp() {
            return None;
        }
        integral += 0.5 * h * (1.0 / (b * b) + 1.0 / (next * next));
        b = next;
    }
    Some(integral)
}
