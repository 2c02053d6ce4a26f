use super::positivity::{certify_positive, Outcome};
use super::sampling::sample_directions;
use super::{Budget, BudgetReport, Evidence, Verdict};
use crate::error::Result;
use crate::linalg::Matrix;
use crate::operator::HomOperator;
use crate::poly::{interpolate_homogeneous, Polynomial};
use crate::scalar::{int, Rational};

/// `⋂_{ξ≠0} ker𝔹[ξ] = {0}`, decided exactly as `⋂_α ker B_α = {0}`.
pub fn check_cocancellation(op: &HomOperator) -> bool {
    let dim = op.domain().dim;
    if dim == 0 {
        return true;
    }
    let mut stacked: Option<Matrix<Rational>> = None;
    for m in op.coefficients().values() {
        stacked = Some(match stacked {
            Some(s) => s.vstack(m).expect("coefficients share the domain"),
            None => m.clone(),
        });
    }
    stacked.is_some_and(|s| s.rank() == dim)
}

/// `e_r(M)` for square `M`, via the Faddeev–LeVerrier recursion.
pub(crate) fn elementary_symmetric(m: &Matrix<Rational>, r: usize) -> Rational {
    let size = m.rows();
    if r == 0 {
        return int(1);
    }
    if r > size {
        return int(0);
    }
    // c holds the characteristic polynomial coefficients c_{size-j}
    let mut n_j: Matrix<Rational> = Matrix::zeros(size, size);
    let mut c_prev = int(1);
    let mut c = int(1);
    for j in 1..=r {
        let mut next = m.mul(&n_j).expect("square");
        for i in 0..size {
            let v = next.get(i, i) + &c_prev;
            next.set(i, i, v);
        }
        n_j = next;
        let mn = m.mul(&n_j).expect("square");
        let tr: Rational = (0..size).map(|i| mn.get(i, i).clone()).sum();
        c = -tr / int(j as i64);
        c_prev = c.clone();
    }
    if r % 2 == 1 {
        -c
    } else {
        c
    }
}

/// `σ(ξ) = e_r(B[ξ]B[ξ]ᵀ)`, the sum of squares of all `r×r` minors.
pub(crate) fn minor_square_sum(op: &HomOperator, r: usize) -> Polynomial {
    let n = op.dim_n();
    let deg = 2 * op.order() * r as u32;
    interpolate_homogeneous(n, deg, |xi| {
        let b = op.symbol_eval_in(xi).expect("point dimension");
        let g = if b.rows() <= b.cols() {
            b.mul(&b.transpose())
        } else {
            b.transpose().mul(&b)
        }
        .expect("Gram product");
        elementary_symmetric(&g, r)
    })
}

/// Dehomogenised grid `(1, t₂, …, tₙ)` with `tᵢ ∈ {0, …, d}`.
pub(crate) fn grid_points(n: usize, d: usize) -> Vec<Vec<Rational>> {
    let side = d + 1;
    let total = side.pow((n - 1) as u32);
    (0..total)
        .map(|mut idx| {
            let mut p = vec![int(1)];
            let mut t = vec![int(0); n - 1];
            for k in (0..n - 1).rev() {
                t[k] = int((idx % side) as i64);
                idx /= side;
            }
            p.extend(t);
            p
        })
        .collect()
}

/// Largest rank on the grid that pins all `(r+1)`-minors of a degree-`k` symbol.
pub(crate) fn max_grid_rank(op: &HomOperator, r: usize) -> (usize, Vec<Rational>) {
    let d = op.order() as usize * (r + 1);
    let pts = grid_points(op.dim_n(), d);
    let ranks = crate::par::map(&pts, |p| op.symbol_eval_in(p).expect("point dimension").rank());
    let (i, best) = ranks.iter().enumerate().max_by_key(|(i, r)| (**r, std::cmp::Reverse(*i))).unwrap();
    (*best, pts[i].clone())
}

/// `rank 𝔹[ξ]` is the same for every real `ξ ≠ 0`.
pub fn check_constant_rank(op: &HomOperator, budget: &Budget) -> Result<Verdict> {
    let mut report = BudgetReport::default();
    let samples = sample_directions(op.dim_n(), budget.samples, budget.seed);
    let ranks: Vec<usize> = samples
        .iter()
        .map(|xi| op.symbol_eval_in(xi).expect("sample dimension").rank())
        .collect();
    report.samples_used = samples.len();
    let r0 = *ranks.iter().max().unwrap();
    let full_idx = ranks.iter().position(|&r| r == r0).unwrap();
    let full_at = samples[full_idx].clone();
    if let Some(i) = ranks.iter().position(|&r| r < r0) {
        return Ok(Verdict::no(
            vec![Evidence::RankDrop {
                xi: samples[i].clone(),
                full_at,
                rank: r0,
            }],
            report,
        ));
    }
    let (grid_rank, grid_at) = max_grid_rank(op, r0);
    if grid_rank > r0 {
        return Ok(Verdict::no(
            vec![Evidence::RankDrop {
                xi: full_at,
                full_at: grid_at,
                rank: grid_rank,
            }],
            report,
        ));
    }
    let sigma = minor_square_sum(op, r0);
    match certify_positive(&sigma, &[], budget.depth, budget.max_boxes) {
        Outcome::Positive { cover, depth, boxes } => {
            report.depth_reached = depth;
            report.boxes_examined = boxes;
            Ok(Verdict::yes(
                vec![Evidence::MinorsVanish { rank: r0 }, Evidence::Positivity(cover)],
                report,
            ))
        }
        Outcome::NonPositive { point, depth, boxes } => {
            report.depth_reached = depth;
            report.boxes_examined = boxes;
            if op.symbol_eval_in(&point)?.rank() < r0 {
                Ok(Verdict::no(
                    vec![Evidence::RankDrop {
                        xi: point,
                        full_at,
                        rank: r0,
                    }],
                    report,
                ))
            } else {
                Ok(Verdict::unknown("minor sum nonpositive at a full-rank point", report))
            }
        }
        Outcome::Exhausted { depth, boxes, reason } => {
            report.depth_reached = depth;
            report.boxes_examined = boxes;
            Ok(Verdict::unknown(reason, report))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn faddeev_matches_direct_sums() {
        let m = Matrix::from_rows(&[
            vec![int(2), int(1), int(0)],
            vec![int(1), int(3), rat(1, 2)],
            vec![int(0), rat(1, 2), int(4)],
        ]);
        assert_eq!(elementary_symmetric(&m, 1), int(9));
        // sum of principal 2x2 minors
        let e2 = (int(6) - int(1)) + (int(8) - int(0)) + (int(12) - rat(1, 4));
        assert_eq!(elementary_symmetric(&m, 2), e2);
        assert_eq!(elementary_symmetric(&m, 3), m.det());
        assert_eq!(elementary_symmetric(&m, 0), int(1));
        assert_eq!(elementary_symmetric(&m, 4), int(0));
    }

    #[test]
    fn grid_shape() {
        let g = grid_points(3, 2);
        assert_eq!(g.len(), 9);
        assert!(g.iter().all(|p| p[0] == int(1)));
    }
}
