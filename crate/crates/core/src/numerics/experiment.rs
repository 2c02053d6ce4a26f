use std::io::Write;

use serde::{Deserialize, Serialize};

use super::family::{counterexample_family, BumpField, ExperimentConfig};
use super::grid::{apply_operator, apply_part_map, lp_norm, sobolev_seminorm, GridField};
use crate::error::{Error, Result};
use crate::operator::catalog::{operator, part_map};
use crate::operator::{HomOperator, PartMap};

/// The three norms of the quotient and the quotient itself.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KmsParts {
    pub lhs_norm: f64,
    pub rhs_partmap_norm: f64,
    pub rhs_b_norm: f64,
    pub ratio: f64,
}

/// The limiting exponent `1* = n/(n−1)`.
pub fn one_star(n: usize) -> f64 {
    n as f64 / (n as f64 - 1.0)
}

/// `‖D^{k−1}P‖_q / (‖D^{k−1}𝒜[P]‖_q + ‖𝔹P‖_{L¹})`.
pub fn kms_ratio(a: &PartMap, b: &HomOperator, p: &GridField, q: f64) -> Result<KmsParts> {
    let j = b.order() - 1;
    let bp = apply_operator(b, p)?;
    let ap = apply_part_map(a, p)?;
    let lhs_norm = sobolev_seminorm(p, j, q);
    let rhs_partmap_norm = sobolev_seminorm(&ap, j, q);
    let rhs_b_norm = lp_norm(&bp, 1.0);
    let denom = rhs_partmap_norm + rhs_b_norm;
    if denom <= f64::MIN_POSITIVE {
        return Err(Error::ZeroDenominator);
    }
    Ok(KmsParts {
        lhs_norm,
        rhs_partmap_norm,
        rhs_b_norm,
        ratio: lhs_norm / denom,
    })
}

/// One CSV row of the blow-up experiment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlowupRow {
    pub eps: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "N")]
    pub points: usize,
    pub lhs_norm: f64,
    pub rhs_partmap_norm: f64,
    pub rhs_b_norm: f64,
    pub ratio: f64,
}

/// `R = 1`, `L = 4`, `N = 96` and `R/ε ∈ {10², …, 10⁵}`.
pub fn default_schedule() -> Vec<ExperimentConfig> {
    (2..=5).map(|d| ExperimentConfig::new(10f64.powi(-d), 1.0)).collect()
}

/// The quotient for `(sym, skewtr Curl)` on `P_φ` at each configuration.
pub fn blowup_experiment(configs: &[ExperimentConfig]) -> Result<Vec<BlowupRow>> {
    let a = part_map("sym", 3)?;
    let b = operator("skewtr curl", 3)?;
    for c in configs {
        c.validate()?;
    }
    let rows = crate::par::map(configs, |cfg| -> Result<BlowupRow> {
        let fam = counterexample_family(cfg)?;
        let parts = kms_ratio(&a, &b, &fam.p_phi, one_star(3))?;
        Ok(BlowupRow {
            eps: cfg.eps,
            r: cfg.r,
            points: cfg.points,
            lhs_norm: parts.lhs_norm,
            rhs_partmap_norm: parts.rhs_partmap_norm,
            rhs_b_norm: parts.rhs_b_norm,
            ratio: parts.ratio,
        })
    });
    rows.into_iter().collect()
}

/// Least-squares line `y ≈ slope·x + intercept`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
}

pub fn fit_line(x: &[f64], y: &[f64]) -> LineFit {
    let m = x.len() as f64;
    let mx = x.iter().sum::<f64>() / m;
    let my = y.iter().sum::<f64>() / m;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    LineFit {
        slope,
        intercept: my - slope * mx,
    }
}

/// Trend statistics over rows sorted by `R/ε`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlowupSummary {
    pub rows: usize,
    pub strictly_increasing: bool,
    /// `(ratio_last / ratio_first)^{1/decades}`.
    pub growth_per_decade: f64,
    /// `ratio³` against `ln(R/ε)`.
    pub cube_fit: LineFit,
    /// `max / min` of `ratio³ / ln(R/ε)`; 1 for exact proportionality.
    pub cube_log_spread: f64,
}

pub fn summarize(rows: &[BlowupRow]) -> BlowupSummary {
    let mut rows = rows.to_vec();
    rows.sort_by(|a, b| (a.r / a.eps).total_cmp(&(b.r / b.eps)));
    let logs: Vec<f64> = rows.iter().map(|r| (r.r / r.eps).ln()).collect();
    let cubes: Vec<f64> = rows.iter().map(|r| r.ratio.powi(3)).collect();
    let strictly_increasing = rows.windows(2).all(|w| w[1].ratio > w[0].ratio);
    let (first, last) = (rows.first(), rows.last());
    let growth_per_decade = match (first, last) {
        (Some(f), Some(l)) if rows.len() > 1 => {
            let decades = (l.r / l.eps).log10() - (f.r / f.eps).log10();
            (l.ratio / f.ratio).powf(1.0 / decades)
        }
        _ => 1.0,
    };
    let per_log: Vec<f64> = cubes.iter().zip(&logs).map(|(c, l)| c / l).collect();
    let max = per_log.iter().cloned().fold(f64::MIN, f64::max);
    let min = per_log.iter().cloned().fold(f64::MAX, f64::min);
    BlowupSummary {
        rows: rows.len(),
        strictly_increasing,
        growth_per_decade,
        cube_fit: fit_line(&logs, &cubes),
        cube_log_spread: if rows.is_empty() { 1.0 } else { max / min },
    }
}

/// Columns `eps,R,N,lhs_norm,rhs_partmap_norm,rhs_B_norm,ratio`.
pub fn write_csv<W: Write>(rows: &[BlowupRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["eps", "R", "N", "lhs_norm", "rhs_partmap_norm", "rhs_B_norm", "ratio"])
        .map_err(|e| Error::Io(e.to_string()))?;
    for r in rows {
        w.write_record([
            format!("{:e}", r.eps),
            format!("{}", r.r),
            r.points.to_string(),
            format!("{:.12e}", r.lhs_norm),
            format!("{:.12e}", r.rhs_partmap_norm),
            format!("{:.12e}", r.rhs_b_norm),
            format!("{:.12e}", r.ratio),
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

/// Error of the stencil `𝔹P_φ` against the analytic `−2Δφ·𝟙₃` for
/// `𝔹 = skewtr Curl`, in `L^p`.
///
/// `Curl[ξ]P = P·Anti(ξ)` gives `Curl P_φ = D²φ − Δφ𝟙`, so the trace part is `−2Δφ`.
pub fn stencil_error(cfg: &ExperimentConfig, p: f64) -> Result<f64> {
    let fam = counterexample_family(cfg)?;
    let b = operator("skewtr curl", 3)?;
    let bp = apply_operator(&b, &fam.p_phi)?;
    let mut exact = GridField::zeros(3, cfg.half_width, cfg.points, 9);
    for cell in 0..exact.cells() {
        let l = fam.laplacian.values[cell];
        for i in 0..3 {
            exact.values[cell * 9 + 4 * i] = -2.0 * l;
        }
    }
    Ok(lp_norm(&bp.combine(1.0, &exact, -1.0)?, p))
}

/// `log₂(e_N / e_{2N})` for the `L^p` stencil error at `N = cfg.points`.
pub fn convergence_order(cfg: &ExperimentConfig, p: f64) -> Result<f64> {
    let coarse = stencil_error(cfg, p)?;
    let fine = stencil_error(&ExperimentConfig {
        points: 2 * cfg.points,
        ..*cfg
    }, p)?;
    Ok((coarse / fine).log2())
}

/// Largest quotient over `fields` at `N` and at `2N`.
pub fn refinement_maxima(
    a: &PartMap,
    b: &HomOperator,
    fields: &[BumpField],
    half_width: f64,
    points: usize,
) -> Result<(f64, f64)> {
    let q = one_star(b.dim_n());
    let n = b.dim_n();
    let max_at = |pts: usize| -> Result<f64> {
        let ratios = crate::par::map(fields, |f| kms_ratio(a, b, &f.sample(n, half_width, pts), q).map(|p| p.ratio));
        ratios.into_iter().try_fold(0.0f64, |m, r| Ok(m.max(r?)))
    };
    Ok((max_at(points)?, max_at(2 * points)?))
}
