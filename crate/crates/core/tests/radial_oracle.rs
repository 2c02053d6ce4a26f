//! Continuum norms of the mollified family by one-dimensional quadrature,
//! independent of the grid code.
//!
//! With `P_φ = Anti(∇φ)`: `|P_φ| = √2|φ'|`, `sym P_φ = 0`, and
//! `skewtr Curl P_φ = −2Δφ·𝟙₃` so `|𝔹P_φ| = 2√3|Δφ|`.

use std::f64::consts::PI;

use kms_core::numerics::{counterexample_family, fit_line, kms_ratio, one_star, radial, ExperimentConfig};
use kms_core::operator::catalog::{operator, part_map};

/// `(φ', Δφ)` at radius `r`, from the closed forms of `ψ = (r² + ε²)^{-1/2}/4π`
/// and the smoothstep cutoff `1 − (10t³ − 15t⁴ + 6t⁵)`, `t = 2r/R − 1`.
fn derivatives(r: f64, eps: f64, big_r: f64) -> (f64, f64) {
    let c = 0.25 / PI;
    let q = r * r + eps * eps;
    let psi = c / q.sqrt();
    let dpsi = -c * r / q.powf(1.5);
    let d2psi = c * (2.0 * r * r - eps * eps) / q.powf(2.5);
    let t = (2.0 * r / big_r - 1.0).clamp(0.0, 1.0);
    let k = 2.0 / big_r;
    let eta = 1.0 - t.powi(3) * (10.0 - 15.0 * t + 6.0 * t * t);
    let deta = -k * 30.0 * t * t * (1.0 - t).powi(2);
    let d2eta = -k * k * 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
    let d1 = deta * psi + eta * dpsi;
    let d2 = d2eta * psi + 2.0 * deta * dpsi + eta * d2psi;
    let lap = if r > 0.0 { d2 + 2.0 * d1 / r } else { 3.0 * d2 };
    (d1, lap)
}

/// Composite Simpson over `s = ln(1 + r/ε)` on `[0, R]` for `∫ f(r) 4πr² dr`.
fn radial_integral(eps: f64, big_r: f64, f: impl Fn(f64) -> f64) -> f64 {
    let m = 200_000;
    let top = (big_r / eps).ln_1p();
    let h = top / m as f64;
    let mut acc = 0.0;
    for i in 0..=m {
        let s = i as f64 * h;
        let r = eps * s.exp_m1();
        let w = if i == 0 || i == m { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(r) * 4.0 * PI * r * r * eps * s.exp();
    }
    acc * h / 3.0
}

/// `(‖P_φ‖_{L^{3/2}}, ‖𝔹P_φ‖_{L¹})` in the continuum.
fn continuum(eps: f64, big_r: f64) -> (f64, f64) {
    let q = one_star(3);
    let lhs = radial_integral(eps, big_r, |r| (2f64.sqrt() * derivatives(r, eps, big_r).0.abs()).powf(q)).powf(1.0 / q);
    let rhs = radial_integral(eps, big_r, |r| 2.0 * 3f64.sqrt() * derivatives(r, eps, big_r).1.abs());
    (lhs, rhs)
}

#[test]
fn closed_forms_agree_with_the_library() {
    let cfg = ExperimentConfig::new(0.05, 1.0);
    for r in [0.0, 0.01, 0.3, 0.55, 0.8, 0.99, 1.2] {
        let (d1, lap) = derivatives(r, cfg.eps, cfg.r);
        let lib = radial(&cfg, r);
        assert!((lib.dphi_over_r * r - d1).abs() <= 1e-10 * (1.0 + d1.abs()), "{r}");
        assert!((lib.laplacian - lap).abs() <= 1e-10 * (1.0 + lap.abs()), "{r}");
    }
}

#[test]
fn grid_norms_match_quadrature_when_resolved() {
    let cfg = ExperimentConfig { eps: 0.2, r: 1.0, points: 96, half_width: 2.1 };
    let fam = counterexample_family(&cfg).unwrap();
    let parts = kms_ratio(&part_map("sym", 3).unwrap(), &operator("skewtr curl", 3).unwrap(), &fam.p_phi, one_star(3)).unwrap();
    let (lhs, rhs) = continuum(cfg.eps, cfg.r);
    assert_eq!(parts.rhs_partmap_norm, 0.0);
    assert!((parts.lhs_norm / lhs - 1.0).abs() < 0.02, "{} vs {lhs}", parts.lhs_norm);
    assert!((parts.rhs_b_norm / rhs - 1.0).abs() < 0.05, "{} vs {rhs}", parts.rhs_b_norm);
}

#[test]
fn continuum_ratio_grows_like_log_to_two_thirds() {
    let eps: Vec<f64> = (2..=5).map(|d| 10f64.powi(-d)).collect();
    let ratios: Vec<f64> = eps
        .iter()
        .map(|&e| {
            let (l, r) = continuum(e, 1.0);
            l / r
        })
        .collect();
    assert!(ratios.windows(2).all(|w| w[1] > w[0]));
    // ‖𝔹P_φ‖_{L¹} stays bounded while ‖P_φ‖^{3/2} grows like log(R/ε)
    let logs: Vec<f64> = eps.iter().map(|e| (1.0 / e).ln()).collect();
    let powers: Vec<f64> = ratios.iter().map(|r| r.powf(1.5)).collect();
    let fit = fit_line(&logs, &powers);
    for (x, y) in logs.iter().zip(&powers) {
        assert!((fit.slope * x + fit.intercept - y).abs() < 1e-3 * y, "{x} {y}");
    }
    let growth = (ratios[3] / ratios[0]).powf(1.0 / 3.0);
    assert!((1.1..1.3).contains(&growth), "{growth}");
    // ratio³ is then quadratic in the log, so ratio³/log drifts by more than 2× here
    let per_log: Vec<f64> = ratios.iter().zip(&logs).map(|(r, l)| r.powi(3) / l).collect();
    assert!(per_log[3] / per_log[0] > 2.0);
}
