use num_traits::Zero;

use super::positivity::{certify_positive, Outcome};
use super::sampling::sample_directions;
use super::{check_domains, Budget, BudgetReport, ComplexWitness, EllipticityWitness, Evidence, Verdict};
use crate::error::Result;
use crate::linalg::{Matrix, Subspace};
use crate::operator::{HomOperator, PartMap};
use crate::poly::{buchberger_limited, interpolate_homogeneous, interpolate_homogeneous_many, monomials_of_degree, Polynomial};
use crate::scalar::{Gaussian, Rational, Scalar};

/// `ker𝒜` and `𝔹` restricted to it.
pub(crate) struct Restricted {
    pub kernel: Subspace,
    pub op: HomOperator,
}

impl Restricted {
    pub fn new(a: &PartMap, b: &HomOperator) -> Result<Self> {
        check_domains(a, b)?;
        let kernel = a.kernel();
        let op = b.restrict(&kernel)?;
        Ok(Restricted { kernel, op })
    }

    pub fn r(&self) -> usize {
        self.kernel.dim()
    }

    /// Lifts kernel coordinates to a vector of `V`.
    pub fn lift<F: Scalar>(&self, c: &[F]) -> Vec<F> {
        let k: Matrix<F> = Matrix::from_columns(
            self.kernel.ambient_dim,
            &self
                .kernel
                .basis()
                .iter()
                .map(|v| v.iter().map(F::from_rational).collect())
                .collect::<Vec<Vec<F>>>(),
        );
        k.mul_vec(c).expect("coordinate count equals kernel dimension")
    }

    /// Real witness at `xi` if the restricted symbol drops rank there.
    pub fn witness_at(&self, xi: &[Rational]) -> Option<EllipticityWitness> {
        let m = self.op.symbol_eval_in(xi).ok()?;
        let c = m.kernel_basis().into_iter().next()?;
        Some(EllipticityWitness {
            xi: xi.to_vec(),
            v: primitive(&self.lift(&c)),
        })
    }

    pub fn complex_witness_at(&self, xi: &[Gaussian]) -> Option<ComplexWitness> {
        let m = self.op.symbol_eval_in(xi).ok()?;
        let c = m.kernel_basis().into_iter().next()?;
        Some(ComplexWitness {
            xi: xi.to_vec(),
            v: self.lift(&c),
        })
    }

    /// `det(B_r[ξ]ᵀ B_r[ξ])` as a polynomial of degree `2kr`.
    pub fn gram_polynomial(&self) -> Polynomial {
        let n = self.op.dim_n();
        let deg = 2 * self.op.order() * self.r() as u32;
        interpolate_homogeneous(n, deg, |xi| {
            let m = self.op.symbol_eval_in(xi).expect("point dimension");
            m.transpose().mul(&m).expect("square Gram matrix").det()
        })
    }

    /// All `r×r` minors of the restricted symbol, linearly interreduced.
    pub fn minor_ideal_generators(&self) -> Vec<Polynomial> {
        let n = self.op.dim_n();
        let r = self.r();
        let rows = self.op.codomain().dim;
        let deg = self.op.order() * r as u32;
        let subsets = combinations(rows, r);
        let cols: Vec<usize> = (0..r).collect();
        let minors = interpolate_homogeneous_many(n, deg, subsets.len(), |xi| {
            let m = self.op.symbol_eval_in(xi).expect("point dimension");
            subsets.iter().map(|s| m.select(s, &cols).det()).collect()
        });
        interreduce(n, deg, &minors)
    }
}

/// Scales to a primitive integer vector with positive leading entry.
pub(crate) fn primitive(v: &[Rational]) -> Vec<Rational> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut l = BigInt::from(1);
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.to_vec();
    }
    let lead_neg = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x < &BigInt::zero());
    if lead_neg {
        g = -g;
    }
    ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
}

pub(crate) fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(0, n, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// A basis of the span of homogeneous polynomials of one degree.
pub(crate) fn interreduce(n: usize, deg: u32, polys: &[Polynomial]) -> Vec<Polynomial> {
    let monos = monomials_of_degree(n, deg);
    let rows: Vec<Vec<Rational>> = polys.iter().map(|p| monos.iter().map(|m| p.coeff(m)).collect()).collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let rref = Matrix::from_rows(&rows).rref();
    (0..rref.rank)
        .map(|i| {
            Polynomial::from_terms(
                n,
                monos.iter().cloned().zip(rref.reduced.row(i)).filter(|(_, c)| !Zero::is_zero(c)),
            )
        })
        .collect()
}

fn real_sample_witness(res: &Restricted, samples: &[Vec<Rational>], report: &mut BudgetReport) -> Option<EllipticityWitness> {
    let r = res.r();
    for (i, xi) in samples.iter().enumerate() {
        report.samples_used = i + 1;
        let m = res.op.symbol_eval_in(xi).expect("sample dimension");
        if m.rank() < r {
            return res.witness_at(xi);
        }
    }
    None
}

/// Real injectivity of `𝔹[ξ]` on `ker𝒜` for every `ξ ≠ 0`.
pub fn check_reduced_ellipticity(a: &PartMap, b: &HomOperator, budget: &Budget) -> Result<Verdict> {
    let res = Restricted::new(a, b)?;
    let mut report = BudgetReport::default();
    if res.r() == 0 {
        return Ok(Verdict::yes(vec![Evidence::Vacuous], report));
    }
    let samples = sample_directions(b.dim_n(), budget.samples, budget.seed);
    if let Some(w) = real_sample_witness(&res, &samples, &mut report) {
        return Ok(Verdict::no(vec![Evidence::Witness(w)], report));
    }
    let g = res.gram_polynomial();
    match certify_positive(&g, &[], budget.depth, budget.max_boxes) {
        Outcome::Positive { cover, depth, boxes } => {
            report.depth_reached = depth;
            report.boxes_examined = boxes;
            Ok(Verdict::yes(vec![Evidence::Positivity(cover)], report))
        }
        Outcome::NonPositive { point, depth, boxes } => {
            report.depth_reached = depth;
            report.boxes_examined = boxes;
            match res.witness_at(&point) {
                Some(w) => Ok(Verdict::no(vec![Evidence::Witness(w)], report)),
                None => Ok(Verdict::unknown("Gram polynomial nonpositive at a full-rank point", report)),
            }
        }
        Outcome::Exhausted { depth, boxes, reason } => {
            report.depth_reached = depth;
            report.boxes_examined = boxes;
            Ok(Verdict::unknown(reason, report))
        }
    }
}

/// Gaussian-integer directions with entries in `{0, ±1, ±i}`, first nonzero entry 1, not all real.
fn gaussian_directions(n: usize, limit: usize) -> Vec<Vec<Gaussian>> {
    let vals = [
        Gaussian::zero(),
        Gaussian::one(),
        Gaussian::one().neg(),
        Gaussian::i(),
        Gaussian::i().neg(),
    ];
    let mut out = Vec::new();
    let total = 5usize.saturating_pow(n as u32);
    for mut idx in 0..total {
        let mut v = Vec::with_capacity(n);
        for _ in 0..n {
            v.push(vals[idx % 5].clone());
            idx /= 5;
        }
        let Some(lead) = v.iter().find(|x| !x.is_zero()) else {
            continue;
        };
        if *lead != Gaussian::one() || v.iter().all(Gaussian::is_real) {
            continue;
        }
        out.push(v);
        if out.len() >= limit {
            break;
        }
    }
    out
}

/// Complex injectivity of `𝔹[ξ]` on `ker𝒜 + i ker𝒜` for every `ξ ∈ ℂⁿ ∖ {0}`.
pub fn check_reduced_c_ellipticity(a: &PartMap, b: &HomOperator, budget: &Budget) -> Result<Verdict> {
    let res = Restricted::new(a, b)?;
    let mut report = BudgetReport::default();
    if res.r() == 0 {
        return Ok(Verdict::yes(vec![Evidence::Vacuous], report));
    }
    let samples = sample_directions(b.dim_n(), budget.samples, budget.seed);
    if let Some(w) = real_sample_witness(&res, &samples, &mut report) {
        return Ok(Verdict::no(vec![Evidence::Witness(w)], report));
    }
    let gens = res.minor_ideal_generators();
    let n = b.dim_n();
    let gb = match buchberger_limited(&gens, budget.max_pairs)? {
        Some(gb) => gb,
        None => {
            report.pairs_reduced = budget.max_pairs;
            return Ok(Verdict::unknown(
                format!("Buchberger exceeded {} S-pair reductions", budget.max_pairs),
                report,
            ));
        }
    };
    let missing = gb.missing_pure_powers();
    if missing.is_empty() {
        return Ok(Verdict::yes(vec![Evidence::GroebnerOriginOnly { basis: gb }], report));
    }
    let mut evidence = vec![Evidence::GroebnerObstruction {
        basis: gb,
        missing_var: missing[0],
    }];
    if let Some(w) = gaussian_directions(n, 2000).iter().find_map(|xi| res.complex_witness_at(xi)) {
        evidence.push(Evidence::ComplexWitness(w));
    }
    Ok(Verdict::no(evidence, report))
}
