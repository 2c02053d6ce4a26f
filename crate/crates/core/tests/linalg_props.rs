use kms_core::linalg::{dot, Matrix, Subspace};
use kms_core::scalar::{rat, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

/// Entries are zero with probability 1/2 so that rank deficiency is common.
fn sparse_rational() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(rat(0, 1)), rational()]
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(sparse_rational(), r * c).prop_map(move |d| Matrix::new(r, c, d))
    })
}

fn subspace(dim: usize) -> impl Strategy<Value = Subspace> {
    prop::collection::vec(prop::collection::vec(sparse_rational(), dim), 0..=dim)
        .prop_map(move |vs| Subspace::span(dim, &vs))
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity(m in matrix(6)) {
        let k = m.kernel_basis();
        prop_assert_eq!(k.len() + m.rank(), m.cols());
        for v in &k {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == rat(0, 1)));
        }
    }

    #[test]
    fn transpose_preserves_rank(m in matrix(6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn intersection_is_commutative_and_contained(a in subspace(5), b in subspace(5)) {
        let ab = a.intersect(&b).unwrap();
        let ba = b.intersect(&a).unwrap();
        prop_assert!(ab.same_span(&ba));
        prop_assert!(ab.is_subspace_of(&a) && ab.is_subspace_of(&b));
        // dim(A + B) + dim(A ∩ B) = dim A + dim B
        prop_assert_eq!(a.sum(&b).unwrap().dim() + ab.dim(), a.dim() + b.dim());
    }

    #[test]
    fn complement_dimension(s in subspace(6)) {
        let c = s.orth_complement();
        prop_assert_eq!(s.dim() + c.dim(), 6);
        for u in s.basis() {
            for w in c.basis() {
                prop_assert_eq!(dot(u, w), rat(0, 1));
            }
        }
    }

    #[test]
    fn projection_is_idempotent_and_self_adjoint(s in subspace(5), v in vector(5), w in vector(5)) {
        let pv = s.project(&v).unwrap();
        prop_assert_eq!(s.project(&pv).unwrap(), pv.clone());
        prop_assert!(s.contains(&pv));
        let pw = s.project(&w).unwrap();
        prop_assert_eq!(dot(&pv, &w), dot(&v, &pw));
    }

    #[test]
    fn solve_recovers_images(m in matrix(5), x in vector(5)) {
        let x = &x[..m.cols()];
        let b = m.mul_vec(x).unwrap();
        let y = m.solve(&b).expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }
}
