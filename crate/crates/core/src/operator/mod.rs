//! Constant-coefficient homogeneous differential operators and their symbols.
//!
//! An operator of order `k` on `ℝⁿ` is stored as its coefficient maps
//! `B_α : V → W`, one per multi-index with `|α| = k`. The symbol is the
//! matrix polynomial `B[ξ] = Σ ξ^α B_α`. Fourier factors `iᵏ` and signs are
//! dropped; only kernels and images of symbols enter the checks.

pub mod catalog;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{matrix_serde, LinearMapQ, Matrix, Subspace};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::scalar::{Rational, Scalar};

/// A finite-dimensional real space, optionally carrying a matrix shape.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpaceDesc {
    pub label: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shape: Option<(usize, usize)>,
}

impl SpaceDesc {
    pub fn vectors(d: usize) -> Self {
        SpaceDesc {
            label: format!("R{d}"),
            dim: d,
            shape: None,
        }
    }

    pub fn matrices(rows: usize, cols: usize) -> Self {
        SpaceDesc {
            label: format!("R{rows}x{cols}"),
            dim: rows * cols,
            shape: Some((rows, cols)),
        }
    }

    pub fn custom(label: impl Into<String>, dim: usize) -> Self {
        SpaceDesc {
            label: label.into(),
            dim,
            shape: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some((r, c)) = self.shape {
            if r * c != self.dim {
                return Err(Error::Shape(format!(
                    "space '{}' has shape {r}x{c} but dimension {}",
                    self.label, self.dim
                )));
            }
        }
        Ok(())
    }
}

/// A named linear map between labelled spaces (𝒜, 𝒯 or a post-composed 𝒮).
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct PartMap {
    pub name: String,
    pub domain: SpaceDesc,
    pub codomain: SpaceDesc,
    #[serde(with = "matrix_serde")]
    pub matrix: Matrix<Rational>,
}

impl PartMap {
    pub fn new(name: impl Into<String>, domain: SpaceDesc, codomain: SpaceDesc, matrix: Matrix<Rational>) -> Result<Self> {
        domain.validate()?;
        codomain.validate()?;
        if matrix.rows() != codomain.dim || matrix.cols() != domain.dim {
            return Err(Error::Shape(format!(
                "{}x{} matrix for a map from dimension {} to {}",
                matrix.rows(),
                matrix.cols(),
                domain.dim,
                codomain.dim
            )));
        }
        Ok(PartMap {
            name: name.into(),
            domain,
            codomain,
            matrix,
        })
    }

    /// `V → {0}`, whose kernel is all of `V`.
    pub fn zero_map(domain: &SpaceDesc) -> PartMap {
        PartMap::new("0", domain.clone(), SpaceDesc::vectors(0), Matrix::zeros(0, domain.dim))
            .expect("shapes agree by construction")
    }

    pub fn linear_map(&self) -> LinearMapQ {
        LinearMapQ::new(self.domain.label.clone(), self.codomain.label.clone(), self.matrix.clone())
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::kernel_of(&self.matrix)
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.matrix.mul_vec(v)
    }

    /// `self ∘ inner`, checked by label.
    pub fn compose(&self, inner: &PartMap) -> Result<PartMap> {
        let m = self.linear_map().compose(&inner.linear_map())?;
        PartMap::new(
            format!("{} {}", self.name, inner.name),
            inner.domain.clone(),
            self.codomain.clone(),
            m.matrix,
        )
    }
}

/// Polynomial-entry form of a symbol.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SymbolMatrix {
    pub rows: usize,
    pub cols: usize,
    pub num_vars: usize,
    /// Row-major.
    pub entries: Vec<Polynomial>,
}

impl SymbolMatrix {
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn eval_in<F: Scalar>(&self, xi: &[F]) -> Result<Matrix<F>> {
        let data = self.entries.iter().map(|p| p.eval_in(xi)).collect::<Result<Vec<F>>>()?;
        Ok(Matrix::new(self.rows, self.cols, data))
    }

    pub fn eval(&self, xi: &[Rational]) -> Result<Matrix<Rational>> {
        self.eval_in(xi)
    }

    /// `self · v` for a column of polynomials.
    pub fn apply_poly(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "polynomial vector of length {} for a symbol with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(self.num_vars);
                for (j, vj) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        acc = acc.add(&a.mul(vj));
                    }
                }
                acc
            })
            .collect())
    }
}

/// `Σ_{|α|=k} B_α ∂^α` from `V` to `W` on `ℝⁿ`; zero coefficients are not stored.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(try_from = "OperatorDoc", into = "OperatorDoc")]
pub struct HomOperator {
    order: u32,
    dim_n: usize,
    domain: SpaceDesc,
    codomain: SpaceDesc,
    coefficients: BTreeMap<Vec<u32>, Matrix<Rational>>,
}

/// Wire format of a [`HomOperator`].
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct OperatorDoc {
    pub order: u32,
    pub dim_n: usize,
    pub domain: SpaceDesc,
    pub codomain: SpaceDesc,
    pub coefficients: Vec<CoefficientDoc>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CoefficientDoc {
    pub alpha: Vec<u32>,
    #[serde(with = "matrix_serde")]
    pub matrix: Matrix<Rational>,
}

impl TryFrom<OperatorDoc> for HomOperator {
    type Error = Error;

    fn try_from(doc: OperatorDoc) -> Result<Self> {
        let mut coefficients = BTreeMap::new();
        for c in doc.coefficients {
            if coefficients.insert(c.alpha.clone(), c.matrix).is_some() {
                return Err(Error::Parse(format!("duplicate multi-index {:?}", c.alpha)));
            }
        }
        HomOperator::new(doc.order, doc.dim_n, doc.domain, doc.codomain, coefficients)
    }
}

impl From<HomOperator> for OperatorDoc {
    fn from(op: HomOperator) -> Self {
        OperatorDoc {
            order: op.order,
            dim_n: op.dim_n,
            domain: op.domain,
            codomain: op.codomain,
            coefficients: op
                .coefficients
                .into_iter()
                .map(|(alpha, matrix)| CoefficientDoc { alpha, matrix })
                .collect(),
        }
    }
}

impl HomOperator {
    pub fn new(
        order: u32,
        dim_n: usize,
        domain: SpaceDesc,
        codomain: SpaceDesc,
        coefficients: BTreeMap<Vec<u32>, Matrix<Rational>>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::Parameter("operator order must be at least 1".into()));
        }
        if dim_n == 0 {
            return Err(Error::Parameter("space dimension must be at least 1".into()));
        }
        domain.validate()?;
        codomain.validate()?;
        let mut kept = BTreeMap::new();
        for (alpha, m) in coefficients {
            if alpha.len() != dim_n {
                return Err(Error::Dimension(format!(
                    "multi-index {alpha:?} has {} entries, expected {dim_n}",
                    alpha.len()
                )));
            }
            if alpha.iter().sum::<u32>() != order {
                return Err(Error::Dimension(format!("multi-index {alpha:?} does not have order {order}")));
            }
            if m.rows() != codomain.dim || m.cols() != domain.dim {
                return Err(Error::Shape(format!(
                    "coefficient {alpha:?} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    codomain.dim,
                    domain.dim
                )));
            }
            if !m.is_zero() {
                kept.insert(alpha, m);
            }
        }
        Ok(HomOperator {
            order,
            dim_n,
            domain,
            codomain,
            coefficients: kept,
        })
    }

    /// Reads off `B_α` from a polynomial symbol whose entries are homogeneous of degree `order`.
    pub fn from_symbol(order: u32, domain: SpaceDesc, codomain: SpaceDesc, symbol: &SymbolMatrix) -> Result<Self> {
        if symbol.rows != codomain.dim || symbol.cols != domain.dim {
            return Err(Error::Shape("symbol shape does not match the spaces".into()));
        }
        let n = symbol.num_vars;
        let mut coefficients = BTreeMap::new();
        for m in monomials_of_degree(n, order) {
            let data: Vec<Rational> = symbol.entries.iter().map(|p| p.coeff(&m)).collect();
            coefficients.insert(m.0, Matrix::new(symbol.rows, symbol.cols, data));
        }
        for p in &symbol.entries {
            if p.terms().any(|(m, _)| m.degree() != order) {
                return Err(Error::Dimension(format!("symbol entry {p} is not homogeneous of degree {order}")));
            }
        }
        HomOperator::new(order, n, domain, codomain, coefficients)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim_n(&self) -> usize {
        self.dim_n
    }

    pub fn domain(&self) -> &SpaceDesc {
        &self.domain
    }

    pub fn codomain(&self) -> &SpaceDesc {
        &self.codomain
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<u32>, Matrix<Rational>> {
        &self.coefficients
    }

    pub fn coefficient_map(&self, alpha: &[u32]) -> LinearMapQ {
        let m = self
            .coefficients
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.codomain.dim, self.domain.dim));
        LinearMapQ::new(self.domain.label.clone(), self.codomain.label.clone(), m)
    }

    pub fn with_codomain_label(mut self, label: impl Into<String>) -> Self {
        self.codomain.label = label.into();
        self
    }

    pub fn symbol_eval_in<F: Scalar>(&self, xi: &[F]) -> Result<Matrix<F>> {
        if xi.len() != self.dim_n {
            return Err(Error::Dimension(format!(
                "ξ has {} entries, operator lives on R^{}",
                xi.len(),
                self.dim_n
            )));
        }
        let (r, c) = (self.codomain.dim, self.domain.dim);
        let mut data = vec![F::zero(); r * c];
        for (alpha, m) in &self.coefficients {
            let mut w = F::one();
            for (x, &e) in xi.iter().zip(alpha) {
                for _ in 0..e {
                    w = w.mul(x);
                }
            }
            if w.is_zero() {
                continue;
            }
            for (slot, b) in data.iter_mut().zip(m.entries()) {
                if !Scalar::is_zero(b) {
                    *slot = slot.add(&w.mul(&F::from_rational(b)));
                }
            }
        }
        Ok(Matrix::new(r, c, data))
    }

    pub fn symbol_eval(&self, xi: &[Rational]) -> Result<LinearMapQ> {
        Ok(LinearMapQ::new(
            self.domain.label.clone(),
            self.codomain.label.clone(),
            self.symbol_eval_in(xi)?,
        ))
    }

    pub fn symbol_matrix(&self) -> SymbolMatrix {
        let (r, c, n) = (self.codomain.dim, self.domain.dim, self.dim_n);
        let mut entries = vec![Polynomial::zero(n); r * c];
        for (alpha, m) in &self.coefficients {
            let mono = Monomial(alpha.clone());
            for (slot, b) in entries.iter_mut().zip(m.entries()) {
                slot.add_term(mono.clone(), b.clone());
            }
        }
        SymbolMatrix {
            rows: r,
            cols: c,
            num_vars: n,
            entries,
        }
    }

    /// Restriction to a subspace of `V`: `B_α ∘ ι` with `ι` the basis injection.
    pub fn restrict(&self, s: &Subspace) -> Result<HomOperator> {
        if s.ambient_dim != self.domain.dim {
            return Err(Error::Dimension(format!(
                "subspace of R^{} for an operator on a {}-dimensional space",
                s.ambient_dim, self.domain.dim
            )));
        }
        let inj = s.basis_matrix();
        let mut coefficients = BTreeMap::new();
        for (alpha, m) in &self.coefficients {
            coefficients.insert(alpha.clone(), m.mul(&inj)?);
        }
        let domain = SpaceDesc::custom(format!("{}|{}", self.domain.label, s.dim()), s.dim());
        HomOperator::new(self.order, self.dim_n, domain, self.codomain.clone(), coefficients)
    }

    /// `S ∘ self`; `S` must start where the operator lands.
    pub fn postcompose(&self, s: &PartMap) -> Result<HomOperator> {
        if s.domain.label != self.codomain.label {
            return Err(Error::Label {
                expected: s.domain.label.clone(),
                found: self.codomain.label.clone(),
            });
        }
        let mut coefficients = BTreeMap::new();
        for (alpha, m) in &self.coefficients {
            coefficients.insert(alpha.clone(), s.matrix.mul(m)?);
        }
        HomOperator::new(self.order, self.dim_n, self.domain.clone(), s.codomain.clone(), coefficients)
    }

    /// `self ∘ T`; `T` must land where the operator starts.
    pub fn precompose(&self, t: &PartMap) -> Result<HomOperator> {
        if t.codomain.label != self.domain.label {
            return Err(Error::Label {
                expected: self.domain.label.clone(),
                found: t.codomain.label.clone(),
            });
        }
        let mut coefficients = BTreeMap::new();
        for (alpha, m) in &self.coefficients {
            coefficients.insert(alpha.clone(), m.mul(&t.matrix)?);
        }
        HomOperator::new(self.order, self.dim_n, t.domain.clone(), self.codomain.clone(), coefficients)
    }

    pub fn scale(&self, c: &Rational) -> HomOperator {
        let coefficients = self.coefficients.iter().map(|(a, m)| (a.clone(), m.scale(c))).collect();
        HomOperator::new(self.order, self.dim_n, self.domain.clone(), self.codomain.clone(), coefficients)
            .expect("scaling preserves validity")
    }

    /// Sum of two operators of equal order between the same spaces.
    pub fn add(&self, other: &HomOperator) -> Result<HomOperator> {
        if self.order != other.order || self.dim_n != other.dim_n {
            return Err(Error::Shape(format!(
                "cannot add an order-{} operator on R^{} to an order-{} operator on R^{}",
                self.order, self.dim_n, other.order, other.dim_n
            )));
        }
        if self.domain.label != other.domain.label || self.codomain.label != other.codomain.label {
            return Err(Error::Label {
                expected: format!("{} -> {}", self.domain.label, self.codomain.label),
                found: format!("{} -> {}", other.domain.label, other.codomain.label),
            });
        }
        let mut coefficients = self.coefficients.clone();
        for (alpha, m) in &other.coefficients {
            let sum = match coefficients.get(alpha) {
                Some(prev) => prev.add(m)?,
                None => m.clone(),
            };
            coefficients.insert(alpha.clone(), sum);
        }
        HomOperator::new(self.order, self.dim_n, self.domain.clone(), self.codomain.clone(), coefficients)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

/// `outer ∘ inner`: orders add, multi-indices convolve.
pub fn compose_ops(outer: &HomOperator, inner: &HomOperator) -> Result<HomOperator> {
    if outer.dim_n != inner.dim_n {
        return Err(Error::Dimension(format!(
            "operators on R^{} and R^{} do not compose",
            outer.dim_n, inner.dim_n
        )));
    }
    if outer.domain.label != inner.codomain.label {
        return Err(Error::Label {
            expected: outer.domain.label.clone(),
            found: inner.codomain.label.clone(),
        });
    }
    let mut coefficients: BTreeMap<Vec<u32>, Matrix<Rational>> = BTreeMap::new();
    for (a2, m2) in &outer.coefficients {
        for (a1, m1) in &inner.coefficients {
            let alpha: Vec<u32> = a1.iter().zip(a2).map(|(x, y)| x + y).collect();
            let prod = m2.mul(m1)?;
            let sum = match coefficients.get(&alpha) {
                Some(prev) => prev.add(&prod)?,
                None => prod,
            };
            coefficients.insert(alpha, sum);
        }
    }
    HomOperator::new(
        outer.order + inner.order,
        outer.dim_n,
        inner.domain.clone(),
        outer.codomain.clone(),
        coefficients,
    )
}

/// First-order operator `v ↦ 𝒜[Dv]` on `ℝᵐ`-valued maps, with symbol `v ↦ 𝒜[v⊗ξ]`.
pub fn gradient_operator(a: &PartMap, n: usize) -> Result<HomOperator> {
    let Some((m, cols)) = a.domain.shape else {
        return Err(Error::Shape(format!("part map '{}' does not act on matrices", a.name)));
    };
    if cols != n {
        return Err(Error::Shape(format!(
            "gradients on R^{n} are {m}x{n} matrices, part map acts on {m}x{cols}"
        )));
    }
    let mut coefficients = BTreeMap::new();
    for j in 0..n {
        // E_j : v ↦ v ⊗ e_j
        let mut ej = Matrix::zeros(m * n, m);
        for i in 0..m {
            ej.set(i * n + j, i, crate::scalar::int(1));
        }
        let mut alpha = vec![0; n];
        alpha[j] = 1;
        coefficients.insert(alpha, a.matrix.mul(&ej)?);
    }
    HomOperator::new(1, n, SpaceDesc::vectors(m), a.codomain.clone(), coefficients)
}

/// Vectorisation index of entry `(i, j)` in a row-major `rows × cols` matrix.
pub fn vec_index(cols: usize, i: usize, j: usize) -> usize {
    i * cols + j
}

#[cfg(test)]
mod tests;
