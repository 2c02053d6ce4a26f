//! Certified positivity of a homogeneous polynomial on the ℓ∞-sphere.
//!
//! Each face `{ξ_var = sign}` is the cube `[-1, 1]^{n-1}` in the remaining
//! variables. Cubes are bisected in every coordinate; a leaf is accepted once
//! the exact interval enclosure of the Taylor expansion at its centre is
//! strictly positive. The subdivision is recorded in preorder (`1` split,
//! `0` leaf), so a cover is complete by construction and re-checkable.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{interval_eval, Interval, IntervalBox, Polynomial};
use crate::scalar::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCover {
    pub var: usize,
    pub sign: i8,
    pub tree: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositivityCover {
    pub polynomial: Polynomial,
    pub faces: Vec<FaceCover>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Positive {
        cover: PositivityCover,
        depth: u32,
        boxes: usize,
    },
    /// `p(point) ≤ 0` at an exact rational point of the sphere.
    NonPositive { point: Vec<Rational>, depth: u32, boxes: usize },
    Exhausted { depth: u32, boxes: usize, reason: String },
}

enum Stop {
    NonPositive(Vec<Rational>),
    Exhausted(String),
}

struct Search {
    max_depth: u32,
    max_boxes: usize,
    boxes: usize,
    depth_reached: u32,
    tree: String,
}

fn cube(m: usize, half: &Rational) -> IntervalBox {
    IntervalBox(vec![Interval::symmetric(half.clone()); m])
}

/// Child offsets in the fixed order used by both prover and verifier:
/// bit `j` of the child index selects the sign in coordinate `j`.
fn child_offsets(m: usize, quarter: &Rational) -> Vec<Vec<Rational>> {
    (0..1usize << m)
        .map(|idx| {
            (0..m)
                .map(|j| if idx >> j & 1 == 1 { quarter.clone() } else { -quarter.clone() })
                .collect()
        })
        .collect()
}

impl Search {
    /// `q` is the face polynomial re-centred at `center`; the cube has half-width `half`.
    fn visit(&mut self, q: &Polynomial, center: &[Rational], half: &Rational, depth: u32) -> Result<(), Stop> {
        self.boxes += 1;
        self.depth_reached = self.depth_reached.max(depth);
        let m = center.len();
        let value = q.coeff(&crate::poly::Monomial::one(m));
        if !value.is_positive() {
            return Err(Stop::NonPositive(center.to_vec()));
        }
        let enc = interval_eval(q, &cube(m, half)).expect("dimensions agree");
        if enc.lo.is_positive() || m == 0 {
            self.tree.push('0');
            return Ok(());
        }
        if depth >= self.max_depth {
            return Err(Stop::Exhausted(format!("subdivision depth {} reached", self.max_depth)));
        }
        if self.boxes >= self.max_boxes {
            return Err(Stop::Exhausted(format!("{} boxes examined", self.max_boxes)));
        }
        self.tree.push('1');
        let quarter = half / int(2);
        for off in child_offsets(m, &quarter) {
            let child = q.translate(&off);
            let c: Vec<Rational> = center.iter().zip(&off).map(|(a, b)| a + b).collect();
            self.visit(&child, &c, &quarter, depth + 1)?;
        }
        Ok(())
    }
}

/// The face list `(var, sign)` for `n` variables.
pub fn faces(n: usize) -> Vec<(usize, i8)> {
    (0..n).flat_map(|v| [(v, 1i8), (v, -1i8)]).collect()
}

fn embed(var: usize, sign: i8, face_point: &[Rational]) -> Vec<Rational> {
    let mut p = face_point.to_vec();
    p.insert(var, int(sign as i64));
    p
}

/// Proves `p > 0` on every face of the ℓ∞-sphere, or finds a sphere point
/// with `p ≤ 0`. The sample points are tried first.
pub fn certify_positive(p: &Polynomial, samples: &[Vec<Rational>], max_depth: u32, max_boxes: usize) -> Outcome {
    for s in samples {
        if !p.eval(s).expect("sample dimension").is_positive() {
            return Outcome::NonPositive {
                point: s.clone(),
                depth: 0,
                boxes: 0,
            };
        }
    }
    let n = p.num_vars();
    let face_list = faces(n);
    let results = crate::par::map(&face_list, |&(var, sign)| {
        let q = p.substitute(var, &int(sign as i64));
        let mut search = Search {
            max_depth,
            max_boxes,
            boxes: 0,
            depth_reached: 0,
            tree: String::new(),
        };
        let center = vec![Rational::zero(); n - 1];
        let r = search.visit(&q, &center, &Rational::one(), 0);
        (r, search)
    });
    let depth = results.iter().map(|(_, s)| s.depth_reached).max().unwrap_or(0);
    let boxes = results.iter().map(|(_, s)| s.boxes).sum();
    for ((var, sign), (r, _)) in face_list.iter().zip(&results) {
        if let Err(Stop::NonPositive(pt)) = r {
            return Outcome::NonPositive {
                point: embed(*var, *sign, pt),
                depth,
                boxes,
            };
        }
    }
    for (r, _) in &results {
        if let Err(Stop::Exhausted(reason)) = r {
            return Outcome::Exhausted {
                depth,
                boxes,
                reason: reason.clone(),
            };
        }
    }
    let faces = face_list
        .iter()
        .zip(results)
        .map(|(&(var, sign), (_, s))| FaceCover { var, sign, tree: s.tree })
        .collect();
    Outcome::Positive {
        cover: PositivityCover {
            polynomial: p.clone(),
            faces,
        },
        depth,
        boxes,
    }
}

fn verify_tree(q: &Polynomial, half: &Rational, tree: &mut std::str::Chars<'_>) -> bool {
    let m = q.num_vars();
    match tree.next() {
        Some('0') => interval_eval(q, &cube(m, half)).is_ok_and(|e| e.lo.is_positive()),
        Some('1') if m > 0 => {
            let quarter = half / int(2);
            child_offsets(m, &quarter)
                .into_iter()
                .all(|off| verify_tree(&q.translate(&off), &quarter, tree))
        }
        _ => false,
    }
}

/// Re-checks every leaf enclosure and that each of the `2n` faces is covered.
pub fn verify_cover(cover: &PositivityCover) -> bool {
    let p = &cover.polynomial;
    let n = p.num_vars();
    if n == 0 {
        return false;
    }
    faces(n).into_iter().all(|(var, sign)| {
        let Some(f) = cover.faces.iter().find(|f| f.var == var && f.sign == sign) else {
            return false;
        };
        let q = p.substitute(var, &int(sign as i64));
        let mut chars = f.tree.chars();
        verify_tree(&q, &Rational::one(), &mut chars) && chars.next().is_none()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn norm2(n: usize) -> Polynomial {
        Polynomial::norm_sq_power(n, 1)
    }

    #[test]
    fn sphere_norm_is_positive() {
        match certify_positive(&norm2(3), &[], 12, 10_000) {
            Outcome::Positive { cover, .. } => {
                assert!(verify_cover(&cover));
                assert_eq!(cover.faces.len(), 6);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn finds_zero_at_centre() {
        // ξ₂² vanishes on the ξ₁ = ±1 faces along ξ₂ = 0
        let p = Polynomial::var(2, 1).pow(2);
        match certify_positive(&p, &[], 12, 10_000) {
            Outcome::NonPositive { point, .. } => {
                assert_eq!(p.eval(&point).unwrap(), int(0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn needs_subdivision() {
        // (ξ₁ − ξ₂/2)² + ξ₂²/100 is positive but small near (1/2, 1)
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = x.sub(&y.scale(&rat(1, 2))).pow(2).add(&y.pow(2).scale(&rat(1, 100)));
        match certify_positive(&p, &[], 12, 10_000) {
            Outcome::Positive { cover, depth, .. } => {
                assert!(depth > 0);
                assert!(verify_cover(&cover));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tampered_cover_fails() {
        let Outcome::Positive { mut cover, .. } = certify_positive(&norm2(2), &[], 12, 100) else {
            panic!()
        };
        assert!(verify_cover(&cover));
        cover.faces.pop();
        assert!(!verify_cover(&cover));
        let Outcome::Positive { mut cover, .. } = certify_positive(&norm2(2), &[], 12, 100) else {
            panic!()
        };
        cover.polynomial = Polynomial::var(2, 0).pow(2);
        assert!(!verify_cover(&cover));
    }

    #[test]
    fn budget_exhaustion() {
        // positive with a tiny minimum: needs deep subdivision
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = x.sub(&y.scale(&rat(1, 3))).pow(2).add(&y.pow(2).scale(&rat(1, 1_000_000)));
        assert!(matches!(certify_positive(&p, &[], 2, 10_000), Outcome::Exhausted { .. }));
    }
}
