#![allow(clippy::excessive_precision)]

use super::QuadratureSpec;
use crate::error::{Error, Result};

use std::cmp::Ordering;
use std::collections::BinaryHeap;

// Gauss-Kronrod 7/15 abscissae on [0, 1) and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 50_000;
const MAX_PANELS: usize = 1_000;

/// Integral estimate with its error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Estimate {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    Estimate {
        value: res_k * half,
        error: rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale),
    }
}

struct Piece {
    a: f64,
    b: f64,
    est: Estimate,
    depth: usize,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

/// Globally adaptive Gauss-Kronrod (7/15) integration over `[a, b]`.
/// Endpoints are never sampled.
pub fn integrate_interval<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let first = qk15(&f, a, b);
    if !first.value.is_finite() {
        return Err(Error::Quadrature {
            estimate: first.value,
            error: f64::INFINITY,
        });
    }
    let mut heap = BinaryHeap::new();
    heap.push(Piece {
        a,
        b,
        est: first,
        depth: 0,
    });
    let mut total = first.value;
    let mut total_err = first.error;
    // pieces that hit max_depth; kept out of the heap
    let mut frozen_val = 0.0;
    let mut frozen_err = 0.0;
    let mut count = 1;

    loop {
        if total_err <= spec.target(total) {
            return Ok(Estimate {
                value: total,
                error: total_err,
            });
        }
        let Some(piece) = heap.pop() else {
            break;
        };
        if piece.depth >= spec.max_depth || count >= MAX_INTERVALS {
            frozen_val += piece.est.value;
            frozen_err += piece.est.error;
            // once nothing refinable is left, give up
            if heap.is_empty() || count >= MAX_INTERVALS {
                let rest_err: f64 = heap.iter().map(|p| p.est.error).sum();
                if frozen_err + rest_err <= spec.target(total) {
                    return Ok(Estimate {
                        value: total,
                        error: frozen_err + rest_err,
                    });
                }
                if heap.is_empty() {
                    break;
                }
                if count >= MAX_INTERVALS {
                    break;
                }
            }
            continue;
        }
        let mid = 0.5 * (piece.a + piece.b);
        let left = qk15(&f, piece.a, mid);
        let right = qk15(&f, mid, piece.b);
        total += left.value + right.value - piece.est.value;
        total_err += left.error + right.error - piece.est.error;
        count += 1;
        if !total.is_finite() {
            break;
        }
        for (lo, hi, est) in [(piece.a, mid, left), (mid, piece.b, right)] {
            heap.push(Piece {
                a: lo,
                b: hi,
                est,
                depth: piece.depth + 1,
            });
        }
    }
    // recompute the error sum to shed accumulated rounding
    let err: f64 = heap.iter().map(|p| p.est.error).sum::<f64>() + frozen_err;
    let value: f64 = heap.iter().map(|p| p.est.value).sum::<f64>() + frozen_val;
    if err <= spec.target(value) {
        return Ok(Estimate { value, error: err });
    }
    Err(Error::Quadrature {
        estimate: value,
        error: err,
    })
}

/// Integral over `[start, inf)` by geometrically growing panels
/// `[start + scale (2^k - 1), start + scale (2^(k+1) - 1)]`, each integrated
/// adaptively. Stops when the extrapolated remainder of a decaying panel
/// sequence is below tolerance.
pub fn integrate_tail<F: Fn(f64) -> f64>(
    f: F,
    start: f64,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    let mut total = 0.0f64;
    let mut total_err = 0.0;
    let mut prev: Option<f64> = None;
    let mut seen_nonzero = false;
    let mut zero_run = 0;
    let mut lo = start;
    let mut width = scale;
    for _ in 0..MAX_PANELS {
        let hi = lo + width;
        let panel_spec = QuadratureSpec {
            abs_tol: spec.abs_tol.max(0.1 * spec.rel_tol * total.abs()),
            ..*spec
        };
        let est = integrate_interval(&f, lo, hi, &panel_spec)?;
        total += est.value;
        total_err += est.error;
        let c = est.value.abs();
        if c == 0.0 {
            zero_run += 1;
            if (seen_nonzero && zero_run >= 4) || zero_run >= 64 {
                return Ok(Estimate {
                    value: total,
                    error: total_err,
                });
            }
        } else {
            seen_nonzero = true;
            zero_run = 0;
        }
        if let Some(p) = prev {
            if c > 0.0 && c < p {
                let r = c / p;
                let tail = c * r / (1.0 - r);
                if tail <= 0.1 * spec.target(total) {
                    return Ok(Estimate {
                        value: total,
                        error: total_err + tail,
                    });
                }
            }
        }
        prev = Some(c);
        lo = hi;
        width *= 2.0;
        if !lo.is_finite() {
            break;
        }
    }
    Err(Error::Quadrature {
        estimate: total,
        error: f64::INFINITY,
    })
}
