use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, Exp1, Gamma, InverseGaussian, Poisson, StandardNormal};

use super::{McConfig, Scheme};

/// Fate of one simulated path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Outcome {
    Survived(f64),
    Killed(f64),
}

/// Sampler of `chi^2_k` for the extra degrees of freedom.
enum Extra {
    None,
    One,
    Two,
    Three,
    General(ChiSquared<f64>),
}

impl Extra {
    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Extra::None => 0.0,
            Extra::One => {
                let z: f64 = rng.sample(StandardNormal);
                z * z
            }
            Extra::Two => 2.0 * rng.sample::<f64, _>(Exp1),
            Extra::Three => {
                let z: f64 = rng.sample(StandardNormal);
                z * z + 2.0 * rng.sample::<f64, _>(Exp1)
            }
            Extra::General(d) => d.sample(rng),
        }
    }
}

pub(crate) struct Stepper {
    mu: f64,
    a: f64,
    steps: u64,
    dt: f64,
    last_dt: f64,
    scheme: Scheme,
    bridge: bool,
    delta: f64,
    extra: Extra,
}

impl Stepper {
    pub(crate) fn new(mu: f64, a: f64, horizon: f64, cfg: &McConfig) -> Self {
        let steps = cfg.steps(horizon);
        let dt = cfg.step.min(horizon);
        let last_dt = horizon - dt * (steps - 1) as f64;
        let delta = 2.0 * (mu + 1.0);
        let k = delta - 1.0;
        let extra = if k <= 0.0 {
            Extra::None
        } else if k == 1.0 {
            Extra::One
        } else if k == 2.0 {
            Extra::Two
        } else if k == 3.0 {
            Extra::Three
        } else {
            Extra::General(ChiSquared::new(k).expect("positive degrees of freedom"))
        };
        Self {
            mu,
            a,
            steps,
            dt,
            last_dt,
            scheme: cfg.scheme,
            bridge: cfg.bridge_correction,
            delta,
            extra,
        }
    }

    fn exact(&self, r: f64, dt: f64, rng: &mut ChaCha8Rng) -> f64 {
        let lambda = r * r / dt;
        let chi = if self.delta >= 1.0 {
            let z: f64 = rng.sample(StandardNormal);
            let c = z + lambda.sqrt();
            c * c + self.extra.sample(rng)
        } else {
            let n = if lambda > 0.0 {
                Poisson::new(lambda / 2.0).expect("positive rate").sample(rng)
            } else {
                0.0
            };
            Gamma::new(self.delta / 2.0 + n, 2.0).expect("positive shape").sample(rng)
        };
        (dt * chi).sqrt()
    }

    fn euler(&self, r: f64, dt: f64, rng: &mut ChaCha8Rng) -> f64 {
        let z: f64 = rng.sample(StandardNormal);
        r + (2.0 * self.mu + 1.0) / (2.0 * r) * dt + dt.sqrt() * z
    }

    pub(crate) fn run(&self, x0: f64, rng: &mut ChaCha8Rng) -> Outcome {
        let mut r = x0;
        let mut time = 0.0;
        for i in 0..self.steps {
            let dt = if i + 1 == self.steps { self.last_dt } else { self.dt };
            let next = match self.scheme {
                Scheme::ExactSquaredBessel => self.exact(r, dt, rng),
                Scheme::EulerSde => self.euler(r, dt, rng),
            };
            // drawn unconditionally so both bridge modes share the stream
            let u: f64 = rng.random();
            if next <= self.a || (self.bridge && u < (-2.0 * (r - self.a) * (next - self.a) / dt).exp()) {
                return Outcome::Killed(time + crossing_time(r - self.a, next - self.a, dt, rng));
            }
            r = next;
            time += dt;
        }
        Outcome::Survived(r)
    }
}

/// First passage time through zero of a Brownian bridge from `u > 0` to `w`
/// over `dt`, given that it crosses. With `tau = dt r / (1 + r)` the ratio
/// `r` is inverse Gaussian with mean `u/|w|` and shape `u^2/dt`.
fn crossing_time(u: f64, w: f64, dt: f64, rng: &mut ChaCha8Rng) -> f64 {
    let shape = u * u / dt;
    let r = if w == 0.0 || shape == 0.0 {
        // infinite mean: Levy distribution
        let z: f64 = rng.sample(StandardNormal);
        shape / (z * z)
    } else {
        match InverseGaussian::new(u / w.abs(), shape) {
            Ok(d) => d.sample(rng),
            Err(_) => 0.0,
        }
    };
    if r.is_finite() {
        dt * r / (1.0 + r)
    } else {
        dt
    }
}
