use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};

/// Exponent vector, ordered by graded reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` if the monomial is `x_i^e` with `e ≥ 1`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.0.len()).filter(|&i| self.0[i] > 0).collect();
        (nz.len() == 1).then(|| nz[0])
    }

    fn key(&self) -> String {
        self.0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        // grevlex: the last differing exponent decides, smaller exponent wins
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors in `n` variables of total degree `d`, ascending in grevlex.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out.sort();
    out
}

/// Sparse multivariate polynomial over ℚ; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        Polynomial::term(num_vars, Monomial::one(num_vars), c)
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        Polynomial::term(num_vars, Monomial::var(num_vars, i), One::one())
    }

    pub fn term(num_vars: usize, m: Monomial, c: Rational) -> Self {
        assert_eq!(m.0.len(), num_vars);
        let mut p = Polynomial::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(num_vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// `|ξ|^{2s} = (ξ₁² + … + ξₙ²)^s`
    pub fn norm_sq_power(num_vars: usize, s: u32) -> Self {
        let mut sq = Polynomial::zero(num_vars);
        for i in 0..num_vars {
            let mut e = vec![0; num_vars];
            e[i] = 2;
            sq.add_term(Monomial(e), One::one());
        }
        sq.pow(s)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Zero::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    fn check_vars(&self, other: &Polynomial) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::Dimension(format!(
                "polynomials in {} and {} variables",
                self.num_vars, other.num_vars
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_vars(other)?;
        let mut out = Polynomial::zero(self.num_vars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Panics on a variable-count mismatch; see [`Polynomial::try_add`].
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.try_add(other).expect("variable count mismatch")
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.try_mul(other).expect("variable count mismatch")
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::constant(self.num_vars, One::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Exact evaluation at a point of any scalar field containing ℚ.
    pub fn eval_in<F: crate::scalar::Scalar>(&self, point: &[F]) -> Result<F> {
        if point.len() != self.num_vars {
            return Err(Error::Dimension(format!(
                "point with {} coordinates for a polynomial in {} variables",
                point.len(),
                self.num_vars
            )));
        }
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_rational(c);
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.mul(x);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        self.eval_in(point)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = crate::scalar::to_f64(c);
                for (x, &e) in point.iter().zip(&m.0) {
                    t *= x.powi(e as i32);
                }
                t
            })
            .sum()
    }

    /// Fixes variable `var` to `value`, producing a polynomial in one fewer variable.
    pub fn substitute(&self, var: usize, value: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.num_vars - 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e.remove(var);
            let mut coef = c.clone();
            for _ in 0..k {
                coef *= value;
            }
            out.add_term(Monomial(e), coef);
        }
        out
    }

    /// `p(x + shift)`, expanded in the monomial basis.
    ///
    /// One variable at a time: terms are grouped by their other exponents and
    /// each univariate coefficient list is shifted by repeated synthetic division.
    pub fn translate(&self, shift: &[Rational]) -> Polynomial {
        assert_eq!(shift.len(), self.num_vars);
        let mut cur = self.clone();
        for (i, c) in shift.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut groups: BTreeMap<Vec<u32>, Vec<Rational>> = BTreeMap::new();
            for (m, coef) in &cur.terms {
                let mut rest = m.0.clone();
                let e = rest[i] as usize;
                rest[i] = 0;
                let row = groups.entry(rest).or_default();
                if row.len() <= e {
                    row.resize(e + 1, Rational::zero());
                }
                row[e] = coef.clone();
            }
            let mut next = Polynomial::zero(self.num_vars);
            for (rest, mut a) in groups {
                // in-place Taylor shift: a(x) -> a(x + c)
                let d = a.len();
                for k in 0..d {
                    for j in (k..d - 1).rev() {
                        let t = &a[j + 1] * c;
                        a[j] += t;
                    }
                }
                for (e, coef) in a.into_iter().enumerate() {
                    let mut m = rest.clone();
                    m[i] = e as u32;
                    next.add_term(Monomial(m), coef);
                }
            }
            cur = next;
        }
        cur
    }

    /// Multiplies by the least common denominator, giving integer coefficients
    /// with the same sign pattern.
    pub fn clear_denominators(&self) -> Polynomial {
        use num_integer::Integer;
        let mut l = num_bigint::BigInt::one();
        for c in self.terms.values() {
            l = l.lcm(c.denom());
        }
        self.scale(&Rational::from_integer(l))
    }

    /// Monic scaling (leading coefficient 1); zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                    .collect();
                if vars.is_empty() {
                    format_rational(c)
                } else {
                    format!("({})*{}", format_rational(c), vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    num_vars: usize,
    terms: BTreeMap<String, String>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(m, c)| (m.key(), format_rational(c))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PolyRepr::deserialize(d)?;
        let mut p = Polynomial::zero(r.num_vars);
        for (k, v) in r.terms {
            let exps: Vec<u32> = if k.is_empty() {
                Vec::new()
            } else {
                k.split(',')
                    .map(|x| x.trim().parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(D::Error::custom)?
            };
            if exps.len() != r.num_vars {
                return Err(D::Error::custom(format!("exponent key '{k}' has wrong length")));
            }
            p.add_term(Monomial(exps), parse_rational(&v).map_err(D::Error::custom)?);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn arithmetic_examples() {
        let p = x(2, 0).pow(2).mul(&x(2, 1));
        assert_eq!(p, Polynomial::term(2, Monomial(vec![2, 1]), int(1)));
        let q = x(2, 0).pow(2).add(&x(2, 1).pow(2));
        assert_eq!(q.eval(&[int(3), int(4)]).unwrap(), int(25));
        let norm = Polynomial::norm_sq_power(3, 1);
        assert_eq!(norm.eval(&[int(1), int(2), int(2)]).unwrap(), int(9));
        assert!(q.try_add(&x(3, 0)).is_err());
        assert!(q.eval(&[int(1)]).is_err());
    }

    #[test]
    fn grevlex_order() {
        // x > y > z in grevlex with equal degree; xz < y^2
        let m = |e: &[u32]| Monomial(e.to_vec());
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
        assert!(m(&[2, 0, 0]) > m(&[1, 1, 0]));
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
    }

    #[test]
    fn monomial_count_is_binomial() {
        // C(d + n - 1, n - 1)
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(1, 5).len(), 1);
        assert_eq!(monomials_of_degree(2, 0), vec![Monomial(vec![0, 0])]);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = x(2, 0).sub(&x(2, 0));
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn translate_matches_evaluation() {
        let p = x(2, 0).pow(3).add(&x(2, 0).mul(&x(2, 1)).scale(&rat(-5, 2))).add(&Polynomial::constant(2, int(7)));
        let c = [rat(1, 3), rat(-2, 1)];
        let t = p.translate(&c);
        for pt in [[int(0), int(0)], [rat(1, 2), int(3)], [int(-1), rat(2, 7)]] {
            let shifted = [&pt[0] + &c[0], &pt[1] + &c[1]];
            assert_eq!(t.eval(&pt).unwrap(), p.eval(&shifted).unwrap());
        }
    }

    #[test]
    fn substitute_drops_variable() {
        let p = x(3, 0).mul(&x(3, 2)).add(&x(3, 1));
        let q = p.substitute(2, &int(2));
        assert_eq!(q.num_vars(), 2);
        assert_eq!(q.eval(&[int(3), int(5)]).unwrap(), int(11));
    }

    #[test]
    fn serde_round_trip() {
        let p = x(3, 0).pow(2).scale(&rat(3, 7)).add(&x(3, 2).mul(&x(3, 1)));
        let s = serde_json::to_string(&p).unwrap();
        let back: Polynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
