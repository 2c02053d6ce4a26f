use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::polynomial::Polynomial;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, rational_str, Rational};

/// Closed interval `[lo, hi]` with exact endpoints; `lo ≤ hi`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rational_str")]
    pub lo: Rational,
    #[serde(with = "rational_str")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Parameter(format!(
                "interval lower bound {} exceeds upper bound {}",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    /// `[-r, r]` for `r ≥ 0`.
    pub fn symmetric(r: Rational) -> Self {
        Interval { lo: -r.clone(), hi: r }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        let a = &self.lo * c;
        let b = &self.hi * c;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    /// Tight power enclosure: even powers of a zero-straddling interval start at 0.
    pub fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(One::one());
        }
        let a = pow_r(&self.lo, e);
        let b = pow_r(&self.hi, e);
        if e % 2 == 1 {
            return Interval { lo: a, hi: b };
        }
        if self.lo.is_negative() && self.hi.is_positive() {
            Interval {
                lo: Zero::zero(),
                hi: a.max(b),
            }
        } else if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }
}

fn pow_r(x: &Rational, e: u32) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= x;
    }
    out
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}

/// Axis-aligned box, one interval per variable.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct IntervalBox(pub Vec<Interval>);

impl IntervalBox {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn center(&self) -> Vec<Rational> {
        self.0.iter().map(Interval::midpoint).collect()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.0.len() && self.0.iter().zip(x).all(|(i, v)| i.contains(v))
    }

    /// The `2^d` boxes obtained by halving every coordinate.
    pub fn bisect_all(&self) -> Vec<IntervalBox> {
        let mut out = vec![Vec::with_capacity(self.0.len())];
        for iv in &self.0 {
            let m = iv.midpoint();
            let halves = [
                Interval {
                    lo: iv.lo.clone(),
                    hi: m.clone(),
                },
                Interval {
                    lo: m,
                    hi: iv.hi.clone(),
                },
            ];
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Interval>| {
                    halves.iter().map(move |h| {
                        let mut v = prefix.clone();
                        v.push(h.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(IntervalBox).collect()
    }
}

/// Monomial-wise enclosure of `p` over `bx`.
pub fn interval_eval(p: &Polynomial, bx: &IntervalBox) -> Result<Interval> {
    if p.num_vars() != bx.dim() {
        return Err(Error::Dimension(format!(
            "box of dimension {} for a polynomial in {} variables",
            bx.dim(),
            p.num_vars()
        )));
    }
    let mut acc = Interval::point(Zero::zero());
    for (m, c) in p.terms() {
        let mut t = Interval::point(c.clone());
        for (iv, &e) in bx.0.iter().zip(&m.0) {
            if e > 0 {
                t = t.mul(&iv.pow(e));
            }
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

/// Enclosure from the Taylor expansion at the box centre; tighter than
/// [`interval_eval`] on small boxes.
pub fn centered_enclosure(p: &Polynomial, bx: &IntervalBox) -> Result<Interval> {
    let c = bx.center();
    let shifted = p.translate(&c);
    let half = IntervalBox(
        bx.0.iter()
            .map(|iv| Interval::symmetric(iv.width() / Rational::from_integer(2.into())))
            .collect(),
    );
    interval_eval(&shifted, &half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(int(a), int(b)).unwrap()
    }

    #[test]
    fn spec_examples() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = x.pow(2).add(&y.pow(2));
        let e = interval_eval(&p, &IntervalBox(vec![iv(1, 2), iv(0, 1)])).unwrap();
        assert!(e.lo <= int(1) && e.hi >= int(5));
        let c = Polynomial::constant(2, int(7));
        assert_eq!(interval_eval(&c, &IntervalBox(vec![iv(-3, 5), iv(0, 1)])).unwrap(), iv(7, 7));
        let xy = x.mul(&y);
        // endpoint enumeration oracle: the corners give the extremes of a bilinear form
        let corners = [(-1, -1), (-1, 1), (1, -1), (1, 1)];
        let vals: Vec<i64> = corners.iter().map(|(a, b)| a * b).collect();
        let expect = iv(*vals.iter().min().unwrap(), *vals.iter().max().unwrap());
        assert_eq!(interval_eval(&xy, &IntervalBox(vec![iv(-1, 1), iv(-1, 1)])).unwrap(), expect);
    }

    #[test]
    fn even_powers_are_nonnegative() {
        assert_eq!(iv(-2, 1).pow(2), iv(0, 4));
        assert_eq!(iv(-2, -1).pow(2), iv(1, 4));
        assert_eq!(iv(-2, 1).pow(3), iv(-8, 1));
    }

    #[test]
    fn rejects_inverted_bounds() {
        assert!(Interval::new(int(1), int(0)).is_err());
    }

    #[test]
    fn centered_is_sound_and_tight() {
        let x = Polynomial::var(1, 0);
        // (x - 1/2)^2 on [0.4, 0.6] ranges in [0, 0.01]
        let p = x.sub(&Polynomial::constant(1, rat(1, 2))).pow(2);
        let bx = IntervalBox(vec![Interval::new(rat(2, 5), rat(3, 5)).unwrap()]);
        let e = centered_enclosure(&p, &bx).unwrap();
        assert_eq!(e, Interval::new(int(0), rat(1, 100)).unwrap());
    }

    #[test]
    fn bisect_all_covers() {
        let b = IntervalBox(vec![iv(0, 2), iv(-1, 1)]);
        let parts = b.bisect_all();
        assert_eq!(parts.len(), 4);
        assert!(parts.iter().any(|p| p.contains(&[int(2), int(-1)])));
    }
}
