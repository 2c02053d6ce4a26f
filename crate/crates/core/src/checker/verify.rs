//! Independent re-derivation of verdict evidence by exact arithmetic.

use super::ellipticity::Restricted;
use super::positivity::verify_cover;
use super::rank::{max_grid_rank, minor_square_sum};
use super::{CheckKind, ComplexWitness, EllipticityWitness, Evidence, EvidenceBundle, NonCancellationCertificate, Status};
use crate::linalg::{is_zero_vec, Matrix, Subspace};
use crate::operator::{HomOperator, PartMap};
use crate::poly::{buchberger, normal_form, Polynomial};
use crate::scalar::{Gaussian, Rational, Scalar};

/// `ξ* ≠ 0`, `v* ≠ 0`, `𝒜v* = 0` and `𝔹[ξ*]v* = 0`.
pub fn verify_witness(a: &PartMap, b: &HomOperator, w: &EllipticityWitness) -> bool {
    if w.xi.len() != b.dim_n() || w.v.len() != b.domain().dim || w.v.len() != a.domain.dim {
        return false;
    }
    if is_zero_vec(&w.xi) || is_zero_vec(&w.v) {
        return false;
    }
    let Ok(av) = a.apply(&w.v) else { return false };
    let Ok(sym) = b.symbol_eval_in(&w.xi) else { return false };
    let Ok(bv) = sym.mul_vec(&w.v) else { return false };
    is_zero_vec(&av) && is_zero_vec(&bv)
}

/// The same identities over ℚ(i).
pub fn verify_complex_witness(a: &PartMap, b: &HomOperator, w: &ComplexWitness) -> bool {
    if w.xi.len() != b.dim_n() || w.v.len() != b.domain().dim || w.v.len() != a.domain.dim {
        return false;
    }
    if is_zero_vec(&w.xi) || is_zero_vec(&w.v) {
        return false;
    }
    let am: Matrix<Gaussian> = Matrix::new(
        a.matrix.rows(),
        a.matrix.cols(),
        a.matrix.entries().iter().map(Gaussian::from_rational).collect(),
    );
    let Ok(av) = am.mul_vec(&w.v) else { return false };
    let Ok(sym) = b.symbol_eval_in(&w.xi) else { return false };
    let Ok(bv) = sym.mul_vec(&w.v) else { return false };
    is_zero_vec(&av) && is_zero_vec(&bv)
}

/// `w ≠ 0`, `𝒜v(ξ) ≡ 0`, and `𝔹[ξ]v(ξ) = |ξ|^{2s}w` as polynomials.
pub fn verify_certificate(a: &PartMap, b: &HomOperator, cert: &NonCancellationCertificate) -> bool {
    let n = b.dim_n();
    let k = b.order();
    if cert.w.len() != b.codomain().dim || cert.v.len() != b.domain().dim || cert.v.len() != a.domain.dim {
        return false;
    }
    if is_zero_vec(&cert.w) || cert.s == 0 || 2 * cert.s < k {
        return false;
    }
    let d = 2 * cert.s - k;
    for p in &cert.v {
        if p.num_vars() != n || p.terms().any(|(m, _)| m.degree() != d) {
            return false;
        }
    }
    for i in 0..a.matrix.rows() {
        let mut acc = Polynomial::zero(n);
        for (j, p) in cert.v.iter().enumerate() {
            let c = a.matrix.get(i, j);
            if !Scalar::is_zero(c) {
                acc = acc.add(&p.scale(c));
            }
        }
        if !acc.is_zero() {
            return false;
        }
    }
    let Ok(lhs) = b.symbol_matrix().apply_poly(&cert.v) else {
        return false;
    };
    let norm = Polynomial::norm_sq_power(n, cert.s);
    lhs.iter().zip(&cert.w).all(|(l, wi)| *l == norm.scale(wi))
}

fn verify_obstruction(res: &Restricted, basis: &crate::poly::GroebnerBasis, missing_var: usize) -> bool {
    if basis.num_vars != res.op.dim_n() || missing_var >= basis.num_vars {
        return false;
    }
    if !basis.is_groebner() || basis.has_pure_power(missing_var) {
        return false;
    }
    res.minor_ideal_generators()
        .iter()
        .all(|m| normal_form(m, &basis.generators).is_zero())
}

fn verify_origin_only(res: &Restricted, basis: &crate::poly::GroebnerBasis) -> bool {
    match buchberger(&res.minor_ideal_generators()) {
        Ok(gb) => gb == *basis && gb.missing_pure_powers().is_empty(),
        Err(_) => false,
    }
}

fn verify_intersection(res: &Restricted, t: Option<&PartMap>, directions: &[Vec<Rational>]) -> bool {
    let w_dim = res.op.codomain().dim;
    let mut c = match t {
        Some(t) => t.kernel(),
        None => Subspace::full(w_dim),
    };
    for xi in directions {
        if xi.len() != res.op.dim_n() || is_zero_vec(xi) {
            return false;
        }
        let Ok(m) = res.op.symbol_eval_in(xi) else { return false };
        c = match c.intersect(&Subspace::image_of(&m)) {
            Ok(c) => c,
            Err(_) => return false,
        };
    }
    c.is_trivial()
}

fn rank_at(op: &HomOperator, xi: &[Rational]) -> Option<usize> {
    if xi.len() != op.dim_n() || is_zero_vec(xi) {
        return None;
    }
    op.symbol_eval_in(xi).ok().map(|m| m.rank())
}

/// Re-derives the evidence of a bundle against its own operators.
///
/// `Unknown` verdicts verify iff they carry an exhaustion reason and no evidence.
pub fn verify_evidence(bundle: &EvidenceBundle) -> bool {
    let v = &bundle.verdict;
    if v.status == Status::Unknown {
        return v.budget.exhausted.is_some() && v.evidence.is_empty();
    }
    if v.evidence.is_empty() {
        return false;
    }
    let b = &bundle.b;
    if bundle.check == CheckKind::ConstantRank {
        return verify_constant_rank(b, v.status, &v.evidence);
    }
    let a = match (&bundle.a, bundle.check) {
        (Some(a), _) => a.clone(),
        (None, CheckKind::FullCancellation) => PartMap::zero_map(b.domain()),
        (None, _) => return false,
    };
    let Ok(res) = Restricted::new(&a, b) else { return false };
    let t = bundle.t.as_ref();
    if bundle.check == CheckKind::PartialCancellation && t.is_none() {
        return false;
    }
    v.evidence.iter().all(|e| match (v.status, e) {
        (Status::CertifiedYes, Evidence::Vacuous) => res.r() == 0,
        (Status::CertifiedNo, Evidence::Witness(w)) => {
            matches!(bundle.check, CheckKind::ReducedEllipticity | CheckKind::ReducedCEllipticity)
                && verify_witness(&a, b, w)
        }
        (Status::CertifiedNo, Evidence::ComplexWitness(w)) => {
            bundle.check == CheckKind::ReducedCEllipticity && verify_complex_witness(&a, b, w)
        }
        (Status::CertifiedYes, Evidence::Positivity(cover)) => {
            bundle.check == CheckKind::ReducedEllipticity
                && cover.polynomial == res.gram_polynomial()
                && verify_cover(cover)
        }
        (Status::CertifiedNo, Evidence::GroebnerObstruction { basis, missing_var }) => {
            bundle.check == CheckKind::ReducedCEllipticity && verify_obstruction(&res, basis, *missing_var)
        }
        (Status::CertifiedYes, Evidence::GroebnerOriginOnly { basis }) => {
            bundle.check == CheckKind::ReducedCEllipticity && verify_origin_only(&res, basis)
        }
        (Status::CertifiedYes, Evidence::ImageIntersection { directions }) => {
            matches!(
                bundle.check,
                CheckKind::ReducedCancellation | CheckKind::FullCancellation | CheckKind::PartialCancellation
            ) && verify_intersection(&res, t, directions)
        }
        (Status::CertifiedNo, Evidence::Certificate(cert)) => {
            let in_t = match t {
                Some(t) => t.apply(&cert.w).is_ok_and(|tw| is_zero_vec(&tw)),
                None => true,
            };
            matches!(
                bundle.check,
                CheckKind::ReducedCancellation | CheckKind::FullCancellation | CheckKind::PartialCancellation
            ) && in_t
                && verify_certificate(&a, b, cert)
        }
        _ => false,
    })
}

fn verify_constant_rank(b: &HomOperator, status: Status, evidence: &[Evidence]) -> bool {
    match status {
        Status::CertifiedNo => evidence.iter().all(|e| match e {
            Evidence::RankDrop { xi, full_at, .. } => match (rank_at(b, xi), rank_at(b, full_at)) {
                (Some(low), Some(high)) => low < high,
                _ => false,
            },
            _ => false,
        }),
        Status::CertifiedYes => {
            let Some(rank) = evidence.iter().find_map(|e| match e {
                Evidence::MinorsVanish { rank } => Some(*rank),
                _ => None,
            }) else {
                return false;
            };
            if max_grid_rank(b, rank).0 > rank {
                return false;
            }
            let Some(cover) = evidence.iter().find_map(|e| match e {
                Evidence::Positivity(c) => Some(c),
                _ => None,
            }) else {
                return false;
            };
            cover.polynomial == minor_square_sum(b, rank) && verify_cover(cover)
        }
        Status::Unknown => false,
    }
}
