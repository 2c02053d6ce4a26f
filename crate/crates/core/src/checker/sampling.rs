//! Deterministic sample directions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{int, rat, Rational};

/// Largest numerator magnitude and denominator of random directions.
pub const MAX_ENTRY: i64 = 97;

/// `±eᵢ`, then `±eᵢ ± eⱼ` for `i < j`.
pub fn structured_directions(n: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for i in 0..n {
        for s in [1, -1] {
            let mut v = vec![int(0); n];
            v[i] = int(s);
            out.push(v);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for (a, b) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![int(0); n];
                v[i] = int(a);
                v[j] = int(b);
                out.push(v);
            }
        }
    }
    out
}

/// `count` nonzero directions with entries `p/q`, `|p| ≤ 97`, `1 ≤ q ≤ 97`.
/// `skip` discards that many directions first, so later batches extend earlier ones.
pub fn random_directions(n: usize, count: usize, seed: u64, skip: usize) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut produced = 0;
    while out.len() < count {
        let v: Vec<Rational> = (0..n)
            .map(|_| {
                let p = rng.gen_range(-MAX_ENTRY..=MAX_ENTRY);
                let q = rng.gen_range(1..=MAX_ENTRY);
                rat(p, q)
            })
            .collect();
        if v.iter().all(|x| *x == int(0)) {
            continue;
        }
        produced += 1;
        if produced > skip {
            out.push(v);
        }
    }
    out
}

/// Structured directions followed by `count` random ones.
pub fn sample_directions(n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut out = structured_directions(n);
    out.extend(random_directions(n, count, seed, 0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_bounded() {
        let a = sample_directions(3, 25, 1);
        let b = sample_directions(3, 25, 1);
        assert_eq!(a, b);
        assert_eq!(a.len(), 6 + 12 + 25);
        for v in &a {
            for x in v {
                assert!(x.numer().magnitude() <= &97u32.into());
                assert!(x.denom() <= &97.into());
            }
        }
        assert_ne!(random_directions(3, 5, 2, 0), random_directions(3, 5, 1, 0));
    }

    #[test]
    fn skip_extends_sequence() {
        let all = random_directions(2, 10, 7, 0);
        assert_eq!(random_directions(2, 4, 7, 6), all[6..].to_vec());
    }
}
