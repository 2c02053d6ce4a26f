//! Seeded random operators shared by the property and acceptance suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use kms_core::linalg::Matrix;
use kms_core::operator::{HomOperator, PartMap, SpaceDesc};
use kms_core::poly::monomials_of_degree;
use kms_core::scalar::{int, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Small integers, zero half the time.
fn entry(rng: &mut ChaCha8Rng) -> Rational {
    if rng.gen_bool(0.5) {
        int(0)
    } else {
        int(rng.gen_range(-2..=2))
    }
}

fn matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<Rational> {
    Matrix::new(rows, cols, (0..rows * cols).map(|_| entry(rng)).collect())
}

/// A random pair `(𝒜, 𝔹)` with `n ∈ {2, 3}`, `k ∈ {1, 2}`, `dim V ≤ max_v`, `dim W ≤ 4`.
pub fn random_pair(seed: u64, max_v: usize) -> (PartMap, HomOperator) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=3);
    let k = rng.gen_range(1..=2);
    let dv = rng.gen_range(1..=max_v);
    let dw = rng.gen_range(1..=4);
    let da = rng.gen_range(0..=dv);
    let b = random_operator(&mut rng, n, k, dv, dw);
    let v = b.domain().clone();
    let a = PartMap::new("A", v, SpaceDesc::vectors(da), matrix(&mut rng, da, dv)).unwrap();
    (a, b)
}

pub fn random_operator(rng: &mut ChaCha8Rng, n: usize, k: u32, dv: usize, dw: usize) -> HomOperator {
    let mut coefficients = BTreeMap::new();
    for m in monomials_of_degree(n, k) {
        coefficients.insert(m.0, matrix(rng, dw, dv));
    }
    HomOperator::new(k, n, SpaceDesc::vectors(dv), SpaceDesc::vectors(dw), coefficients).unwrap()
}

pub fn random_rationals(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| kms_core::scalar::rat(rng.gen_range(-9..=9), rng.gen_range(1..=5))).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
