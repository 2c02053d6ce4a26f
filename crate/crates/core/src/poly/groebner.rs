//! Buchberger's algorithm in graded reverse lexicographic order.

use serde::{Deserialize, Serialize};

use super::polynomial::{Monomial, Polynomial};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Grevlex,
}

/// Reduced Gröbner basis: monic, sorted by ascending leading monomial.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct GroebnerBasis {
    pub num_vars: usize,
    pub order: MonomialOrder,
    pub generators: Vec<Polynomial>,
}

fn lm(p: &Polynomial) -> &Monomial {
    p.leading_term().expect("nonzero polynomial").0
}

/// Full reduction of `f` modulo `basis`; the remainder has no term divisible
/// by any leading monomial.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let mut p = f.clone();
    let mut rem = Polynomial::zero(f.num_vars());
    'outer: while let Some((m, c)) = p.leading_term() {
        let (m, c) = (m.clone(), c.clone());
        for g in basis {
            let (gm, gc) = g.leading_term().expect("basis elements are nonzero");
            if gm.divides(&m) {
                let q = gm.quotient_of(&m);
                p = p.sub(&g.mul_term(&q, &(&c / gc)));
                continue 'outer;
            }
        }
        rem.add_term(m.clone(), c.clone());
        p.add_term(m, -c);
    }
    rem
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let l = fm.lcm(gm);
    f.mul_term(&fm.quotient_of(&l), &fc.recip())
        .sub(&g.mul_term(&gm.quotient_of(&l), &gc.recip()))
}

fn check_vars(gens: &[Polynomial]) -> Result<usize> {
    let n = gens.first().map_or(0, |g| g.num_vars());
    if gens.iter().any(|g| g.num_vars() != n) {
        return Err(Error::Dimension("generators with differing variable counts".into()));
    }
    Ok(n)
}

/// Unbounded Buchberger; see [`buchberger_limited`].
pub fn buchberger(gens: &[Polynomial]) -> Result<GroebnerBasis> {
    Ok(buchberger_limited(gens, usize::MAX)?.expect("unbounded run always completes"))
}

/// Buchberger with the product and chain criteria. Returns `Ok(None)` once
/// more than `max_pairs` S-polynomials have been reduced.
pub fn buchberger_limited(gens: &[Polynomial], max_pairs: usize) -> Result<Option<GroebnerBasis>> {
    let n = check_vars(gens)?;
    let mut g: Vec<Polynomial> = gens.iter().filter(|p| !p.is_zero()).map(Polynomial::monic).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut reduced = 0usize;
    while !pairs.is_empty() {
        // normal selection: smallest lcm first
        let (k, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| lm(&g[a.0]).lcm(lm(&g[a.1])).cmp(&lm(&g[b.0]).lcm(lm(&g[b.1]))))
            .unwrap();
        let (i, j) = pairs.swap_remove(k);
        let (mi, mj) = (lm(&g[i]), lm(&g[j]));
        if mi.is_coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let chain = (0..g.len()).any(|t| {
            t != i
                && t != j
                && lm(&g[t]).divides(&l)
                && !pairs.contains(&(i.min(t), i.max(t)))
                && !pairs.contains(&(j.min(t), j.max(t)))
        });
        if chain {
            continue;
        }
        reduced += 1;
        if reduced > max_pairs {
            return Ok(None);
        }
        let r = normal_form(&s_polynomial(&g[i], &g[j]), &g);
        if !r.is_zero() {
            let idx = g.len();
            g.push(r.monic());
            for t in 0..idx {
                pairs.push((t, idx));
            }
        }
    }
    Ok(Some(GroebnerBasis {
        num_vars: n,
        order: MonomialOrder::Grevlex,
        generators: reduce_basis(g),
    }))
}

fn reduce_basis(g: Vec<Polynomial>) -> Vec<Polynomial> {
    // minimal: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let m = lm(p);
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != i && lm(q).divides(m) && (lm(q) != m || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Polynomial> =
                minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
            let p = &minimal[i];
            let (m, c) = p.leading_term().unwrap();
            let mut tail = p.clone();
            tail.add_term(m.clone(), -c.clone());
            let mut r = normal_form(&tail, &others);
            r.add_term(m.clone(), c.clone());
            r.monic()
        })
        .collect();
    out.sort_by(|a, b| lm(a).cmp(lm(b)));
    out
}

impl GroebnerBasis {
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.generators)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().map(|g| lm(g).clone()).collect()
    }

    /// Every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let g = &self.generators;
        if g.iter().any(|p| p.is_zero() || p.num_vars() != self.num_vars) {
            return false;
        }
        (0..g.len()).all(|j| (0..j).all(|i| normal_form(&s_polynomial(&g[i], &g[j]), g).is_zero()))
    }

    /// The ideal contains `1`.
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| lm(g).degree() == 0)
    }

    /// Some leading monomial is a pure power of `var`.
    pub fn has_pure_power(&self, var: usize) -> bool {
        self.is_unit() || self.leading_monomials().iter().any(|m| m.pure_power_var() == Some(var))
    }

    /// Variables with no pure power among the leading monomials.
    pub fn missing_pure_powers(&self) -> Vec<usize> {
        (0..self.num_vars).filter(|&v| !self.has_pure_power(v)).collect()
    }
}

/// For homogeneous generators: the common complex zero set is `{0}` iff every
/// variable has a pure power in the leading-term ideal.
pub fn variety_only_origin(gens: &[Polynomial]) -> Result<bool> {
    Ok(buchberger(gens)?.missing_pure_powers().is_empty())
}

pub fn variety_only_origin_limited(gens: &[Polynomial], max_pairs: usize) -> Result<Option<bool>> {
    Ok(buchberger_limited(gens, max_pairs)?.map(|gb| gb.missing_pure_powers().is_empty()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn x() -> Polynomial {
        Polynomial::var(2, 0)
    }
    fn y() -> Polynomial {
        Polynomial::var(2, 1)
    }

    #[test]
    fn already_a_basis() {
        let gens = vec![x().pow(2), x().mul(&y())];
        let gb = buchberger(&gens).unwrap();
        assert_eq!(gb.generators.len(), 2);
        assert!(gb.generators.contains(&x().pow(2)));
        assert!(gb.generators.contains(&x().mul(&y())));
        assert!(!variety_only_origin(&gens).unwrap());
    }

    #[test]
    fn linear_forms() {
        let gb = buchberger(&[x(), y()]).unwrap();
        assert_eq!(gb.generators, vec![y(), x()]);
        assert!(variety_only_origin(&[x(), y()]).unwrap());
    }

    #[test]
    fn sum_and_difference() {
        let gens = vec![x().pow(2).sub(&y().pow(2)), x().pow(2).add(&y().pow(2))];
        let gb = buchberger(&gens).unwrap();
        assert!(gb.contains(&x().pow(2)));
        assert!(gb.contains(&y().pow(2)));
        assert!(variety_only_origin(&gens).unwrap());
        assert!(gb.is_groebner());
    }

    #[test]
    fn generators_reduce_to_zero() {
        let z = Polynomial::var(3, 2);
        let a = Polynomial::var(3, 0);
        let b = Polynomial::var(3, 1);
        let gens = vec![
            a.pow(2).sub(&b.mul(&z)),
            b.pow(2).sub(&a.mul(&z)).scale(&int(3)),
            z.pow(2).sub(&a.mul(&b)),
        ];
        let gb = buchberger(&gens).unwrap();
        assert!(gb.is_groebner());
        for g in &gens {
            assert!(gb.contains(g));
        }
        // the twisted cubic-like ideal vanishes on (1,1,1)
        assert!(!variety_only_origin(&gens).unwrap());
    }

    #[test]
    fn sum_of_squares_has_complex_zeros() {
        let gens = vec![x().pow(2).add(&y().pow(2))];
        assert!(!variety_only_origin(&gens).unwrap());
    }

    #[test]
    fn limit_reports_exhaustion() {
        let z = Polynomial::var(3, 2);
        let a = Polynomial::var(3, 0);
        let b = Polynomial::var(3, 1);
        let gens = vec![a.pow(2).sub(&b.mul(&z)), b.pow(2).sub(&a.mul(&z)), z.pow(2).sub(&a.mul(&b))];
        assert_eq!(variety_only_origin_limited(&gens, 0).unwrap(), None);
    }

    #[test]
    fn mismatched_variables() {
        assert!(buchberger(&[x(), Polynomial::var(3, 0)]).is_err());
    }
}
