use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::grid::GridField;
use crate::error::{Error, Result};

/// One member of the mollified, cut-off fundamental-solution family on `ℝ³`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Mollification length `ε`.
    pub eps: f64,
    /// Cutoff radius `R`.
    #[serde(rename = "R")]
    pub r: f64,
    /// Cells per axis `N`.
    #[serde(rename = "N")]
    pub points: usize,
    /// Box half-width `L`.
    #[serde(rename = "L")]
    pub half_width: f64,
}

impl ExperimentConfig {
    /// `L = 4R`, `N = 96`.
    pub fn new(eps: f64, r: f64) -> Self {
        ExperimentConfig {
            eps,
            r,
            points: 96,
            half_width: 4.0 * r,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.eps > 0.0
            && self.eps < self.r / 4.0
            && self.r / 4.0 < self.half_width / 8.0
            && self.points >= 2
            && self.points.is_multiple_of(2);
        if !ok {
            return Err(Error::Parameter(format!(
                "need 0 < eps < R/4 < L/8 and N even, got eps = {}, R = {}, L = {}, N = {}",
                self.eps, self.r, self.half_width, self.points
            )));
        }
        Ok(())
    }
}

/// The quintic `η` with `η = 1` on `[0, R/2]`, `η = 0` beyond `R`, and
/// `η', η''` vanishing at both ends of the transition. Returns `(η, η', η'')`.
pub fn cutoff(r: f64, big_r: f64) -> (f64, f64, f64) {
    let a = big_r / 2.0;
    if r <= a {
        return (1.0, 0.0, 0.0);
    }
    if r >= big_r {
        return (0.0, 0.0, 0.0);
    }
    let t = (r - a) / a;
    let s = t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
    let ds = 30.0 * t * t * (1.0 - t) * (1.0 - t);
    let dds = 60.0 * t * (1.0 - t) * (1.0 - 2.0 * t);
    (1.0 - s, -ds / a, -dds / (a * a))
}

/// Radial data of `φ(x) = η_R(|x|)(|x|² + ε²)^{-1/2}/(4π)` at radius `r`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Radial {
    pub phi: f64,
    /// `φ'(r)/r`, finite at `r = 0`.
    pub dphi_over_r: f64,
    pub d2phi: f64,
    pub laplacian: f64,
}

pub fn radial(cfg: &ExperimentConfig, r: f64) -> Radial {
    let c = 1.0 / (4.0 * PI);
    let q = r * r + cfg.eps * cfg.eps;
    let psi = c / q.sqrt();
    // ψ'/r and ψ''
    let dpsi_r = -c / (q * q.sqrt());
    let d2psi = c * (3.0 * r * r - q) / (q * q * q.sqrt());
    let (eta, deta, d2eta) = cutoff(r, cfg.r);
    let dphi_over_r = if deta == 0.0 { eta * dpsi_r } else { deta * psi / r + eta * dpsi_r };
    let d2phi = d2eta * psi + 2.0 * deta * dpsi_r * r + eta * d2psi;
    Radial {
        phi: eta * psi,
        dphi_over_r,
        d2phi,
        laplacian: d2phi + 2.0 * dphi_over_r,
    }
}

/// Analytic `∇φ(x)`.
pub fn grad_phi(cfg: &ExperimentConfig, x: &[f64]) -> [f64; 3] {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let g = radial(cfg, r).dphi_over_r;
    [g * x[0], g * x[1], g * x[2]]
}

/// Analytic `D²φ(x) = (φ'/r)𝟙 + (φ'' − φ'/r) x̂ ⊗ x̂`.
pub fn hessian_phi(cfg: &ExperimentConfig, x: &[f64]) -> [[f64; 3]; 3] {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    let rad = radial(cfg, r);
    let mut h = [[0.0; 3]; 3];
    for (i, row) in h.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            let radial_part = if r > 0.0 { (rad.d2phi - rad.dphi_over_r) * x[i] * x[j] / (r * r) } else { 0.0 };
            *v = if i == j { rad.dphi_over_r } else { 0.0 } + radial_part;
        }
    }
    h
}

/// `Anti(z)` vectorised row-major.
pub fn anti_vec(z: [f64; 3]) -> Vec<f64> {
    vec![0.0, -z[2], z[1], z[2], 0.0, -z[0], -z[1], z[0], 0.0]
}

pub struct Counterexample {
    pub phi: GridField,
    /// `P_φ = Anti(∇φ)` with the analytic gradient.
    pub p_phi: GridField,
    pub laplacian: GridField,
}

pub fn counterexample_family(cfg: &ExperimentConfig) -> Result<Counterexample> {
    cfg.validate()?;
    let (l, n) = (cfg.half_width, cfg.points);
    let radius = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok(Counterexample {
        phi: GridField::from_fn(3, l, n, 1, |x| vec![radial(cfg, radius(x)).phi]),
        p_phi: GridField::from_fn(3, l, n, 9, |x| anti_vec(grad_phi(cfg, x))),
        laplacian: GridField::from_fn(3, l, n, 1, |x| vec![radial(cfg, radius(x)).laplacian]),
    })
}

/// `exp(1 − 1/(1 − s²))` on `|s| < 1`, zero outside; smooth with peak 1.
pub fn bump(s2: f64) -> f64 {
    if s2 >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - s2)).exp()
    }
}

/// `Σ_m c_m β(|x − x_m|/ρ_m)` with vector coefficients `c_m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BumpField {
    pub components: usize,
    pub centers: Vec<Vec<f64>>,
    pub radii: Vec<f64>,
    pub coefficients: Vec<Vec<f64>>,
}

impl BumpField {
    /// `count` bumps with centres in `[-0.25, 0.25]ⁿ·L`, radii in `[0.35, 0.55]·L`
    /// and coefficients uniform in `[-1, 1]`.
    pub fn random(n: usize, components: usize, half_width: f64, count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = BumpField {
            components,
            centers: Vec::new(),
            radii: Vec::new(),
            coefficients: Vec::new(),
        };
        for _ in 0..count {
            f.centers.push((0..n).map(|_| rng.gen_range(-0.25..0.25) * half_width).collect());
            f.radii.push(rng.gen_range(0.35..0.55) * half_width);
            f.coefficients.push((0..components).map(|_| rng.gen_range(-1.0..1.0)).collect());
        }
        f
    }

    pub fn eval(&self, x: &[f64]) -> Vec<f64> {
        let mut v = vec![0.0; self.components];
        for ((c, rho), coef) in self.centers.iter().zip(&self.radii).zip(&self.coefficients) {
            let d2: f64 = x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum();
            let b = bump(d2 / (rho * rho));
            if b != 0.0 {
                for (vi, ci) in v.iter_mut().zip(coef) {
                    *vi += b * ci;
                }
            }
        }
        v
    }

    pub fn sample(&self, n: usize, half_width: f64, points: usize) -> GridField {
        GridField::from_fn(n, half_width, points, self.components, |x| self.eval(x))
    }
}
