//! Recovery of homogeneous polynomials from exact point evaluations.
//!
//! A homogeneous `p` of degree `D` in `n` variables is determined by the
//! dehomogenised `q(t₂,…,tₙ) = p(1, t₂, …, tₙ)`, whose partial degrees are at
//! most `D`. Sampling `q` on the grid `{0,…,D}^{n-1}` and applying the inverse
//! Vandermonde matrix along each axis gives its coefficients exactly.

use num_traits::Zero;

use super::polynomial::{Monomial, Polynomial};
use crate::linalg::Matrix;
use crate::scalar::{int, Rational};

fn inverse_vandermonde(d: usize) -> Matrix<Rational> {
    let mut v = Matrix::zeros(d + 1, d + 1);
    for i in 0..=d {
        let mut p = int(1);
        for j in 0..=d {
            v.set(i, j, p.clone());
            p *= int(i as i64);
        }
    }
    v.inverse().expect("Vandermonde matrix on distinct nodes is invertible")
}

/// Interpolates `count` homogeneous polynomials of the given degree from a
/// closure returning all their values at a point.
///
/// The closure must be exactly polynomial of that degree; stray coefficients
/// are a caller bug and trip a debug assertion.
pub fn interpolate_homogeneous_many<F>(n: usize, degree: u32, count: usize, f: F) -> Vec<Polynomial>
where
    F: Fn(&[Rational]) -> Vec<Rational> + Sync + Send,
{
    assert!(n >= 1, "interpolation needs at least one variable");
    let d = degree as usize;
    let m = n - 1;
    let side = d + 1;
    let total = side.pow(m as u32);
    let grid: Vec<Vec<usize>> = (0..total)
        .map(|mut idx| {
            let mut t = vec![0; m];
            for k in (0..m).rev() {
                t[k] = idx % side;
                idx /= side;
            }
            t
        })
        .collect();
    let values: Vec<Vec<Rational>> = crate::par::map(&grid, |t| {
        let mut pt = Vec::with_capacity(n);
        pt.push(int(1));
        pt.extend(t.iter().map(|&x| int(x as i64)));
        let v = f(&pt);
        assert_eq!(v.len(), count, "closure returned the wrong number of values");
        v
    });
    let vinv = inverse_vandermonde(d);
    (0..count)
        .map(|c| {
            let mut data: Vec<Rational> = values.iter().map(|v| v[c].clone()).collect();
            // axis k has stride side^(m-1-k)
            for k in 0..m {
                let stride = side.pow((m - 1 - k) as u32);
                let mut next = vec![Rational::zero(); total];
                for (base, slot) in next.iter_mut().enumerate() {
                    let pos = (base / stride) % side;
                    let start = base - pos * stride;
                    let mut acc = Rational::zero();
                    for j in 0..side {
                        let a = vinv.get(pos, j);
                        if !a.is_zero() {
                            acc += a * &data[start + j * stride];
                        }
                    }
                    *slot = acc;
                }
                data = next;
            }
            let mut p = Polynomial::zero(n);
            for (coef, t) in data.into_iter().zip(&grid) {
                if coef.is_zero() {
                    continue;
                }
                let s: usize = t.iter().sum();
                debug_assert!(s <= d, "evaluations are not homogeneous of degree {degree}");
                if s > d {
                    continue;
                }
                let mut e = Vec::with_capacity(n);
                e.push((d - s) as u32);
                e.extend(t.iter().map(|&x| x as u32));
                p.add_term(Monomial(e), coef);
            }
            p
        })
        .collect()
}

pub fn interpolate_homogeneous<F>(n: usize, degree: u32, f: F) -> Polynomial
where
    F: Fn(&[Rational]) -> Rational + Sync + Send,
{
    interpolate_homogeneous_many(n, degree, 1, |x| vec![f(x)]).pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn recovers_known_polynomials() {
        let x = |i| Polynomial::var(3, i);
        let p = x(0).pow(2).mul(&x(1)).scale(&rat(3, 2))
            .add(&x(2).pow(3).scale(&int(-7)))
            .add(&x(0).mul(&x(1)).mul(&x(2)));
        let q = interpolate_homogeneous(3, 3, |pt| p.eval(pt).unwrap());
        assert_eq!(q, p);
    }

    #[test]
    fn one_variable_and_zero() {
        let p = Polynomial::var(1, 0).pow(4).scale(&int(5));
        assert_eq!(interpolate_homogeneous(1, 4, |pt| p.eval(pt).unwrap()), p);
        let z = interpolate_homogeneous(2, 3, |_| int(0));
        assert!(z.is_zero());
    }
}
