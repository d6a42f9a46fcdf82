use bessel_heat::hitting::q_half_exact;
use bessel_heat::kernels::exact_half_kernel;
use bessel_heat::montecarlo::*;
use bessel_heat::quadrature::{integrate_interval, QuadratureSpec};

fn half_kill_probability(t: f64) -> f64 {
    integrate_interval(|s| q_half_exact(1.0, 2.0, s).unwrap(), 0.0, t, &QuadratureSpec::default())
        .unwrap()
        .value
}

#[test]
fn estimates_do_not_depend_on_thread_count() {
    let cfg = McConfig::new(20_000, 0.01, 42);
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let a = one.install(|| estimate_kernel_mc(1.0, 2.0, 1.0, 0.5, &cfg).unwrap());
    let b = four.install(|| estimate_kernel_mc(1.0, 2.0, 1.0, 0.5, &cfg).unwrap());
    assert_eq!(a, b);
    let c = four.install(|| simulate_paths(1.0, 2.0, 1.0, 0.5, &cfg).unwrap());
    let d = one.install(|| simulate_paths(1.0, 2.0, 1.0, 0.5, &cfg).unwrap());
    assert_eq!(c, d);
}

#[test]
fn mass_is_conserved() {
    for mu in [0.0, 0.5, 1.0, 2.0] {
        let cfg = McConfig::new(100_000, 0.01, 9);
        let e = estimate_kernel_mc(mu, 2.0, 1.0, 0.5, &cfg).unwrap();
        let survivors: u64 = e.counts.iter().sum();
        let killed = (e.kill_fraction * 100_000.0).round() as u64;
        assert_eq!(survivors + killed, 100_000);
        assert!((e.total_mass() - 1.0).abs() <= 3.0 * e.mass_std_err() + 1e-12);
    }
}

#[test]
fn bridge_correction_only_adds_kills() {
    for mu in [0.0, 1.0] {
        let on = McConfig::new(50_000, 0.02, 5);
        let off = on.clone().with_bridge(false);
        let a = simulate_paths(mu, 1.5, 1.0, 1.0, &on).unwrap();
        let b = simulate_paths(mu, 1.5, 1.0, 1.0, &off).unwrap();
        assert!(a.hitting_times.len() > b.hitting_times.len());
    }
}

#[test]
fn short_time_mean_follows_drift() {
    let cfg = McConfig::new(200_000, 1e-3, 3);
    let s = simulate_paths(0.0, 5.0, 1.0, 0.01, &cfg).unwrap();
    let n = s.survivors.len() as f64;
    let mean = s.survivors.iter().sum::<f64>() / n;
    let var = s.survivors.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let expect = 5.0 + 0.01 / (2.0 * 5.0);
    assert!((mean - expect).abs() <= 3.0 * (var / n).sqrt(), "{mean} vs {expect}");
}

#[test]
fn half_index_hitting_density_matches_closed_form() {
    let cfg = McConfig::new(200_000, 2e-3, 17);
    let e = estimate_hitting_mc(0.5, 2.0, 1.0, 1.0, &cfg).unwrap();
    let mut ok = 0;
    let mut populated = 0;
    for i in 0..e.values.len() {
        if e.counts[i] < 200 {
            continue;
        }
        populated += 1;
        let (lo, hi) = (e.bin_edges[i], e.bin_edges[i + 1]);
        let avg = integrate_interval(|s| q_half_exact(1.0, 2.0, s).unwrap(), lo, hi, &QuadratureSpec::default())
            .unwrap()
            .value
            / (hi - lo);
        if (e.values[i] - avg).abs() <= 3.0 * e.std_errors[i] {
            ok += 1;
        }
    }
    assert!(populated > 20);
    assert!(ok as f64 >= 0.95 * populated as f64, "{ok}/{populated}");
    let p = half_kill_probability(1.0);
    assert!((e.kill_fraction - p).abs() <= 3.0 * e.kill_std_err, "{} vs {p}", e.kill_fraction);
}

#[test]
fn half_index_kernel_matches_closed_form() {
    let cfg = McConfig::new(200_000, 2e-3, 23);
    let e = estimate_kernel_mc(0.5, 2.0, 1.0, 1.0, &cfg).unwrap();
    let spec = QuadratureSpec::default();
    let (mut ok, mut populated) = (0, 0);
    for i in 0..e.values.len() {
        if e.counts[i] < 200 {
            continue;
        }
        populated += 1;
        let (lo, hi) = (e.bin_edges[i], e.bin_edges[i + 1]);
        let avg = integrate_interval(|y| exact_half_kernel(1.0, 1.0, 2.0, y).unwrap() * y * y, lo, hi, &spec)
            .unwrap()
            .value
            / e.bin_mass[i];
        if (e.values[i] - avg).abs() <= 3.0 * e.std_errors[i] {
            ok += 1;
        }
    }
    assert!(ok as f64 >= 0.95 * populated as f64, "{ok}/{populated}");
}

#[test]
fn step_halving_moves_estimates_within_noise() {
    let coarse = McConfig::new(100_000, 0.02, 31);
    let fine = McConfig::new(100_000, 0.01, 31);
    let a = estimate_hitting_mc(0.5, 2.0, 1.0, 1.0, &coarse).unwrap();
    let b = estimate_hitting_mc(0.5, 2.0, 1.0, 1.0, &fine).unwrap();
    let (mut ok, mut populated) = (0, 0);
    for i in 0..a.values.len() {
        if a.counts[i] < 200 || b.counts[i] < 200 {
            continue;
        }
        populated += 1;
        if (a.values[i] - b.values[i]).abs() < 2.0 * a.std_errors[i].max(b.std_errors[i]) {
            ok += 1;
        }
    }
    assert!(ok as f64 >= 0.9 * populated as f64, "{ok}/{populated}");
}

#[test]
fn euler_scheme_is_close_to_exact() {
    let cfg = McConfig::new(100_000, 1e-3, 8).with_scheme(Scheme::EulerSde);
    let e = estimate_hitting_mc(0.5, 2.0, 1.0, 1.0, &cfg).unwrap();
    let p = half_kill_probability(1.0);
    assert!((e.kill_fraction - p).abs() <= 4.0 * e.kill_std_err + 2e-3, "{} vs {p}", e.kill_fraction);
}

#[test]
fn small_dimension_sampler_runs() {
    // 0 < 2(mu+1) < 1 takes the Poisson-mixed gamma branch
    let cfg = McConfig::new(50_000, 0.01, 4);
    let e = estimate_kernel_mc(-0.75, 2.0, 1.0, 0.2, &cfg).unwrap();
    assert!((e.total_mass() - 1.0).abs() <= 3.0 * e.mass_std_err() + 1e-12);
    let g = estimate_kernel_mc(-0.25, 2.0, 1.0, 0.2, &cfg).unwrap();
    // a smaller index pushes paths toward the barrier
    assert!(e.kill_fraction > g.kill_fraction);
}

#[test]
fn estimate_serializes() {
    let cfg = McConfig::new(1000, 0.05, 1);
    let e = estimate_kernel_mc(0.0, 2.0, 1.0, 0.5, &cfg).unwrap();
    let json = serde_json::to_string(&e).unwrap();
    assert!(json.contains("\"kill_fraction\"") && json.contains("\"ExactSquaredBessel\""));
}

#[test]
fn bridge_estimates_sit_in_rigorous_bracket() {
    use bessel_heat::kernels::bracket_kernel;
    let mus = [0.0, 0.3, 1.0, 2.0];
    let fine = BridgeConfig { paths: 100_000, grid_points: 256, seed: 12 };
    let coarse = BridgeConfig { grid_points: 64, ..fine.clone() };
    let f = estimate_kernel_bridge(&mus, 1.0, 0.5, 1.6, 2.5, &fine).unwrap();
    let c = estimate_kernel_bridge(&mus, 1.0, 0.5, 1.6, 2.5, &coarse).unwrap();
    for (j, &mu) in mus.iter().enumerate() {
        let b = bracket_kernel(mu, 1.0, 0.5, 1.6, 2.5).unwrap();
        let s3 = 3.0 * f[j].std_err;
        assert!(f[j].value >= b.lower.unwrap() - s3 && f[j].value <= b.upper + s3, "mu={mu}");
        // same bridges on a coarser grid: the quadrature of the weight is converged
        assert!((f[j].weight - c[j].weight).abs() < 1e-3, "mu={mu}");
    }
}

#[test]
fn bridge_estimate_agrees_with_forward_simulation() {
    let cfg = McConfig::new(200_000, 2e-3, 19).with_bins(vec![2.3, 2.4]);
    let fwd = estimate_kernel_mc(1.0, 2.0, 1.0, 0.5, &cfg).unwrap();
    let bridge = BridgeConfig { paths: 50_000, grid_points: 128, seed: 3 };
    let p = estimate_kernel_bridge(&[1.0], 1.0, 0.5, 2.0, 2.35, &bridge).unwrap()[0].value;
    // a bin of width 0.1 averages a smooth density: allow 1% for curvature
    let gap = (fwd.values[0] - p).abs();
    assert!(gap <= 3.0 * fwd.std_errors[0] + 0.01 * p, "{} vs {p}", fwd.values[0]);
}
