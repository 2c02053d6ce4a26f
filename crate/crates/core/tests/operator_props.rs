mod common;

use kms_core::linalg::Matrix;
use kms_core::operator::catalog::{anti, operator, part_map};
use kms_core::operator::{compose_ops, gradient_operator};
use kms_core::scalar::{int, Rational};
use proptest::prelude::*;

use common::{random_operator, random_pair, random_rationals, rng};

fn outer(x: &[Rational], y: &[Rational]) -> Matrix<Rational> {
    let mut m = Matrix::zeros(x.len(), y.len());
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            m.set(i, j, a * b);
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symbol_is_homogeneous(seed in any::<u64>()) {
        let (_, b) = random_pair(seed, 6);
        let mut r = rng(seed ^ 1);
        let xi = random_rationals(&mut r, b.dim_n());
        let t = random_rationals(&mut r, 1).remove(0);
        let txi: Vec<Rational> = xi.iter().map(|x| x * &t).collect();
        let tk = (0..b.order()).fold(int(1), |acc, _| acc * &t);
        prop_assert_eq!(b.symbol_eval(&txi).unwrap().matrix, b.symbol_eval(&xi).unwrap().matrix.scale(&tk));
    }

    #[test]
    fn symbol_matrix_agrees_with_evaluation(seed in any::<u64>()) {
        let (_, b) = random_pair(seed, 6);
        let sym = b.symbol_matrix();
        let mut r = rng(seed ^ 2);
        for _ in 0..20 {
            let xi = random_rationals(&mut r, b.dim_n());
            prop_assert_eq!(sym.eval(&xi).unwrap(), b.symbol_eval(&xi).unwrap().matrix);
        }
    }

    #[test]
    fn composition_multiplies_symbols(seed in any::<u64>()) {
        let (_, b) = random_pair(seed, 4);
        let mut r = rng(seed ^ 3);
        let inner = random_operator(&mut r, b.dim_n(), 1, 3, b.domain().dim);
        let ab = compose_ops(&b, &inner).unwrap();
        for _ in 0..5 {
            let xi = random_rationals(&mut r, b.dim_n());
            let lhs = ab.symbol_eval(&xi).unwrap().matrix;
            let rhs = b.symbol_eval(&xi).unwrap().matrix.mul(&inner.symbol_eval(&xi).unwrap().matrix).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lagrange_identity(a in prop::collection::vec((-9i64..=9, 1i64..=4), 3), xi in prop::collection::vec((-9i64..=9, 1i64..=4), 3)) {
        let a: Vec<Rational> = a.iter().map(|&(p, q)| kms_core::scalar::rat(p, q)).collect();
        let xi: Vec<Rational> = xi.iter().map(|&(p, q)| kms_core::scalar::rat(p, q)).collect();
        // Anti(a)·Anti(ξ) = ξ ⊗ a − ⟨a, ξ⟩𝟙
        let lhs = anti(&a).mul(&anti(&xi)).unwrap();
        let ip: Rational = a.iter().zip(&xi).map(|(x, y)| x * y).sum();
        let rhs = outer(&xi, &a).add(&Matrix::identity(3).scale(&-ip)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn curl_annihilates_gradients(v in prop::collection::vec((-9i64..=9, 1i64..=4), 3), xi in prop::collection::vec((-9i64..=9, 1i64..=4), 3)) {
        let v: Vec<Rational> = v.iter().map(|&(p, q)| kms_core::scalar::rat(p, q)).collect();
        let xi: Vec<Rational> = xi.iter().map(|&(p, q)| kms_core::scalar::rat(p, q)).collect();
        let curl = operator("curl", 3).unwrap();
        let vxi = outer(&v, &xi);
        let image = curl.symbol_eval(&xi).unwrap().apply(vxi.entries()).unwrap();
        prop_assert!(image.iter().all(|x| *x == int(0)));
        let grad = gradient_operator(&part_map("id", 3).unwrap(), 3).unwrap();
        prop_assert!(compose_ops(&curl, &grad).unwrap().is_zero());
    }
}
