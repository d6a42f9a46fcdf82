/// Coefficient `c_k(mu)` of the large-argument expansion of `I_mu`:
/// `c_k = prod_{j=1..k} (4 mu^2 - (2j-1)^2) / (8^k k!)` for `k >= 1` and
/// `c_0 = 0`. The leading `1` of the series is added by callers.
pub fn coeff_c(mu: f64, k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let m = 4.0 * mu * mu;
    let mut c = 1.0;
    for j in 1..=k {
        let odd = (2 * j - 1) as f64;
        c *= (m - odd * odd) / (8.0 * j as f64);
    }
    c
}
