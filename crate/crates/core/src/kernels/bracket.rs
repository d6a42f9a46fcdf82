use super::exact::half_kernel_unchecked;
use super::KernelQuery;
use crate::error::{domain, Result};

/// Two-sided enclosure of a kernel value.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Bracket {
    pub lower: Option<f64>,
    pub upper: f64,
    pub tag: String,
}

impl Bracket {
    pub fn contains(&self, v: f64) -> bool {
        self.lower.map_or(v >= 0.0, |l| v >= l) && v <= self.upper
    }
}

/// Rigorous enclosure of the killed kernel for `mu >= 0`, by comparison
/// with the `mu = 1/2` kernel through the Girsanov density of the two laws.
pub fn bracket_kernel(mu: f64, a: f64, t: f64, x: f64, y: f64) -> Result<Bracket> {
    if !(mu >= 0.0) {
        return domain(format!("bracket needs mu >= 0, got {mu}; reflect negative indices first"));
    }
    let q = KernelQuery::new(a, t, x, y)?;
    let g = (x * y).powf(0.5 - mu) * half_kernel_unchecked(&q);
    let s = t / (a * a);
    let drift = (mu * mu - 0.25) * s / 2.0;
    Ok(if mu >= 0.5 {
        Bracket {
            lower: Some((-drift).exp() * g),
            upper: g,
            tag: "lower: girsanov weight at barrier; upper: half-index comparison".into(),
        }
    } else {
        Bracket {
            lower: Some(g),
            upper: (-drift).exp() * g,
            tag: "lower: half-index comparison; upper: girsanov weight at barrier".into(),
        }
    })
}
