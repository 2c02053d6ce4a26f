use std::collections::HashMap;

use super::ellipticity::{primitive, Restricted};
use super::sampling::{random_directions, sample_directions};
use super::{Budget, BudgetReport, Evidence, NonCancellationCertificate, Verdict};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, Matrix, Subspace};
use crate::operator::{HomOperator, PartMap};
use crate::poly::{monomials_of_degree, Polynomial};
use crate::scalar::{int, Rational};

/// Extra sampling rounds after a failed certificate search.
const REFINE_ROUNDS: usize = 3;

/// `⋂_{ξ≠0} 𝔹[ξ](ker𝒜) = {0}`.
pub fn check_reduced_cancellation(a: &PartMap, b: &HomOperator, budget: &Budget) -> Result<Verdict> {
    cancellation(&Restricted::new(a, b)?, None, budget)
}

/// `⋂_{ξ≠0} 𝔹[ξ](V) = {0}`.
pub fn check_full_cancellation(b: &HomOperator, budget: &Budget) -> Result<Verdict> {
    let a = PartMap::zero_map(b.domain());
    cancellation(&Restricted::new(&a, b)?, None, budget)
}

/// `⋂_{ξ≠0} 𝔹[ξ](ker𝒜) ∩ ker𝒯 = {0}` for `𝒯` defined on `W`.
pub fn check_partial_cancellation(a: &PartMap, b: &HomOperator, t: &PartMap, budget: &Budget) -> Result<Verdict> {
    if t.domain.dim != b.codomain().dim {
        return Err(Error::Shape(format!(
            "T acts on a {}-dimensional space but B lands in dimension {}",
            t.domain.dim,
            b.codomain().dim
        )));
    }
    cancellation(&Restricted::new(a, b)?, Some(t.kernel()), budget)
}

fn cancellation(res: &Restricted, constraint: Option<Subspace>, budget: &Budget) -> Result<Verdict> {
    let mut report = BudgetReport::default();
    if res.r() == 0 {
        return Ok(Verdict::yes(vec![Evidence::Vacuous], report));
    }
    let op = &res.op;
    let n = op.dim_n();
    let w_dim = op.codomain().dim;
    let mut c = constraint.unwrap_or_else(|| Subspace::full(w_dim));
    let mut used: Vec<Vec<Rational>> = Vec::new();
    let shrink = |c: Subspace, dirs: &[Vec<Rational>], used: &mut Vec<Vec<Rational>>| -> Subspace {
        let mut c = c;
        for xi in dirs {
            if c.is_trivial() {
                break;
            }
            let img = Subspace::image_of(&op.symbol_eval_in(xi).expect("sample dimension"));
            c = c.intersect(&img).expect("same ambient space");
            used.push(xi.clone());
        }
        c
    };
    c = shrink(c, &sample_directions(n, budget.samples, budget.seed), &mut used);
    report.samples_used = used.len();
    if c.is_trivial() {
        return Ok(Verdict::yes(vec![Evidence::ImageIntersection { directions: used }], report));
    }
    let k = op.order();
    let s_min = k.div_ceil(2);
    for round in 0..=REFINE_ROUNDS {
        for s in s_min..=budget.smax {
            report.degree_searched = report.degree_searched.max(s);
            if let Some(cert) = search_certificate(res, &c, s) {
                return Ok(Verdict::no(vec![Evidence::Certificate(cert)], report));
            }
        }
        if round == REFINE_ROUNDS {
            break;
        }
        let before = c.dim();
        let extra = random_directions(n, budget.samples, budget.seed, budget.samples * (round + 1));
        c = shrink(c, &extra, &mut used);
        report.samples_used = used.len();
        if c.is_trivial() {
            return Ok(Verdict::yes(vec![Evidence::ImageIntersection { directions: used }], report));
        }
        if c.dim() == before {
            return Ok(Verdict::unknown(
                format!(
                    "no certificate up to s = {}; sampled intersection stable at dimension {}",
                    budget.smax,
                    c.dim()
                ),
                report,
            ));
        }
    }
    Ok(Verdict::unknown(
        format!("no certificate up to s = {} after {} refinement rounds", budget.smax, REFINE_ROUNDS),
        report,
    ))
}

/// Solves `B_r[ξ]u(ξ) = |ξ|^{2s} w` jointly for `u` (degree `2s − k`, in
/// kernel coordinates) and `w ∈ C`, and returns a solution with `w ≠ 0`.
fn search_certificate(res: &Restricted, c: &Subspace, s: u32) -> Option<NonCancellationCertificate> {
    let op = &res.op;
    let (n, k, r) = (op.dim_n(), op.order(), res.r());
    if 2 * s < k {
        return None;
    }
    let d = 2 * s - k;
    let w_dim = op.codomain().dim;
    let monos_d = monomials_of_degree(n, d);
    let monos_2s = monomials_of_degree(n, 2 * s);
    let row_of: HashMap<Vec<u32>, usize> = monos_2s.iter().enumerate().map(|(i, m)| (m.0.clone(), i)).collect();
    let norm = Polynomial::norm_sq_power(n, s);
    let c_basis = c.basis();
    let u_cols = r * monos_d.len();
    let mut sys: Matrix<Rational> = Matrix::zeros(w_dim * monos_2s.len(), u_cols + c_basis.len());
    let row = |i: usize, mu: usize| i * monos_2s.len() + mu;
    for (alpha, b) in op.coefficients() {
        for (mi, m) in monos_d.iter().enumerate() {
            let mu: Vec<u32> = alpha.iter().zip(&m.0).map(|(x, y)| x + y).collect();
            let mu = row_of[&mu];
            for i in 0..w_dim {
                for j in 0..r {
                    let v = b.get(i, j);
                    if *v != int(0) {
                        let col = j * monos_d.len() + mi;
                        let cur = sys.get(row(i, mu), col).clone();
                        sys.set(row(i, mu), col, cur + v);
                    }
                }
            }
        }
    }
    for (mu_i, mu) in monos_2s.iter().enumerate() {
        let nc = norm.coeff(mu);
        if nc == int(0) {
            continue;
        }
        for (l, cv) in c_basis.iter().enumerate() {
            for (i, c) in cv.iter().enumerate().take(w_dim) {
                if *c != int(0) {
                    sys.set(row(i, mu_i), u_cols + l, -(&nc * c));
                }
            }
        }
    }
    let sol = sys
        .kernel_basis()
        .into_iter()
        .find(|x| !is_zero_vec(&x[u_cols..]))?;
    let mut w = vec![int(0); w_dim];
    for (l, cv) in c_basis.iter().enumerate() {
        for i in 0..w_dim {
            w[i] += &sol[u_cols + l] * &cv[i];
        }
    }
    let wp = primitive(&w);
    let lead = (0..w_dim).find(|&i| w[i] != int(0))?;
    let factor = &wp[lead] / &w[lead];
    let coords: Vec<Polynomial> = (0..r)
        .map(|j| {
            Polynomial::from_terms(
                n,
                monos_d
                    .iter()
                    .enumerate()
                    .map(|(mi, m)| (m.clone(), &sol[j * monos_d.len() + mi] * &factor)),
            )
        })
        .collect();
    let basis = res.kernel.basis();
    let v: Vec<Polynomial> = (0..res.kernel.ambient_dim)
        .map(|i| {
            let mut acc = Polynomial::zero(n);
            for (j, bj) in basis.iter().enumerate() {
                if bj[i] != int(0) {
                    acc = acc.add(&coords[j].scale(&bj[i]));
                }
            }
            acc
        })
        .collect();
    Some(NonCancellationCertificate { w: wp, s, v })
}
