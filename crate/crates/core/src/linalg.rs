//! Exact dense matrices over a [`Scalar`] field and subspace algebra over ℚ.
//!
//! Everything here is deterministic: elimination always pivots on the first
//! nonzero entry in column order, and subspaces keep their basis in reduced
//! row echelon form so equal spans built along different routes print the same.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rational_vecvec, Rational, Scalar};

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref<F> {
    pub reduced: Matrix<F>,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl<F: Scalar> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows*cols");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![F::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<F>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Matrix::new(r, c, data)
    }

    /// Matrix whose columns are the given vectors, each of length `len`.
    pub fn from_columns(len: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Matrix::zeros(len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), len);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<F> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut t = self.transpose();
        for x in t.data.iter_mut() {
            *x = x.conj();
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out: Matrix<F> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Ok(Matrix::new(self.rows, self.cols, data))
    }

    pub fn scale(&self, s: &F) -> Matrix<F> {
        Matrix::new(self.rows, self.cols, self.data.iter().map(|x| x.mul(s)).collect())
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.rows != other.rows {
            return Err(Error::Dimension("hstack row mismatch".into()));
        }
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    pub fn vstack(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.cols {
            return Err(Error::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix::new(self.rows + other.rows, self.cols, data))
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix<F> {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (jj, &j) in idx.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix<F> {
        let mut m = Matrix::zeros(rows.len(), cols.len());
        for (ii, &i) in rows.iter().enumerate() {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(ii, jj, self.get(i, j).clone());
            }
        }
        m
    }

    /// Gauss-Jordan elimination, pivoting on the first nonzero entry of each column.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = F::one().div(m.get(r, c));
            for j in c..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rv = m.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).sub(&f.mul(rv));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref {
            reduced: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the null space, one vector per free column (unit in that column).
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let Rref { reduced, pivots, .. } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = reduced.get(row, f).neg();
                }
                v
            })
            .collect()
    }

    /// Pivot columns of the original matrix: a basis of the column space.
    pub fn image_basis(&self) -> Vec<Vec<F>> {
        self.rref().pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn det(&self) -> F {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = det.neg();
            }
            let piv = m.get(c, c).clone();
            det = det.mul(&piv);
            for i in c + 1..n {
                let f = m.get(i, c).div(&piv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Solves `self * x = b` for one particular solution, if any.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()])).ok()?;
        let Rref { reduced, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = reduced.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// `None` for singular or non-square matrices.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(n)).ok()?;
        let Rref { reduced, rank, pivots } = aug.rref();
        if rank < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, reduced.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

pub fn dot<F: Scalar>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

pub fn is_zero_vec<F: Scalar>(v: &[F]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Scales a rational vector so its first nonzero entry is 1.
pub fn normalize_leading(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|x| !Scalar::is_zero(*x)) {
        Some(lead) => {
            let lead = lead.clone();
            v.iter().map(|x| x / &lead).collect()
        }
        None => v.to_vec(),
    }
}

/// Exact rational matrix between two labelled spaces.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct LinearMapQ {
    pub domain: String,
    pub codomain: String,
    #[serde(with = "matrix_serde")]
    pub matrix: Matrix<Rational>,
}

impl LinearMapQ {
    pub fn new(domain: impl Into<String>, codomain: impl Into<String>, matrix: Matrix<Rational>) -> Self {
        LinearMapQ {
            domain: domain.into(),
            codomain: codomain.into(),
            matrix,
        }
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// `self ∘ inner`; the labels must line up.
    pub fn compose(&self, inner: &LinearMapQ) -> Result<LinearMapQ> {
        if self.domain != inner.codomain {
            return Err(Error::Label {
                expected: self.domain.clone(),
                found: inner.codomain.clone(),
            });
        }
        Ok(LinearMapQ::new(
            inner.domain.clone(),
            self.codomain.clone(),
            self.matrix.mul(&inner.matrix)?,
        ))
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.matrix.mul_vec(v)
    }

    pub fn rref(&self) -> Rref<Rational> {
        self.matrix.rref()
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::kernel_of(&self.matrix)
    }

    pub fn image(&self) -> Subspace {
        Subspace::image_of(&self.matrix)
    }
}

pub mod matrix_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        rows: usize,
        cols: usize,
        #[serde(with = "rational_vecvec")]
        entries: Vec<Vec<Rational>>,
    }

    pub fn serialize<S: Serializer>(m: &Matrix<Rational>, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.to_rows(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix<Rational>, D::Error> {
        let r = Repr::deserialize(d)?;
        if r.entries.len() != r.rows || r.entries.iter().any(|row| row.len() != r.cols) {
            return Err(serde::de::Error::custom("matrix entry count does not match rows x cols"));
        }
        let data = r.entries.into_iter().flatten().collect();
        Ok(Matrix::new(r.rows, r.cols, data))
    }
}

/// A subspace of ℚ^ambient, stored as a basis in reduced row echelon form.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct Subspace {
    pub ambient_dim: usize,
    #[serde(with = "rational_vecvec")]
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace::span(ambient_dim, &Matrix::<Rational>::identity(ambient_dim).to_rows())
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(ambient_dim);
        }
        for v in vectors {
            assert_eq!(v.len(), ambient_dim, "vector length must equal ambient dimension");
        }
        let Rref { reduced, rank, .. } = Matrix::from_rows(vectors).rref();
        Subspace {
            ambient_dim,
            basis: (0..rank).map(|i| reduced.row(i)).collect(),
        }
    }

    pub fn kernel_of(m: &Matrix<Rational>) -> Self {
        Subspace::span(m.cols(), &m.kernel_basis())
    }

    pub fn image_of(m: &Matrix<Rational>) -> Self {
        Subspace::span(m.rows(), &m.image_basis())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// ambient × dim matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix<Rational> {
        Matrix::from_columns(self.ambient_dim, &self.basis)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        if is_zero_vec(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(&rows).rank() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    /// Equality of spans by mutual containment.
    pub fn same_span(&self, other: &Subspace) -> bool {
        self.is_subspace_of(other) && other.is_subspace_of(self)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient_dim, &v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Dimension(format!(
                "subspaces of ambient dimension {} and {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// S1 ∩ S2 via the kernel of `[B1 | -B2]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        if self.is_trivial() || other.is_trivial() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        let b1 = self.basis_matrix();
        let b2 = other.basis_matrix().scale(&Scalar::neg(&<Rational as Scalar>::one()));
        let stacked = b1.hstack(&b2)?;
        let k = self.dim();
        let vectors: Vec<Vec<Rational>> = stacked
            .kernel_basis()
            .iter()
            .map(|sol| b1.mul_vec(&sol[..k]).expect("shapes agree"))
            .collect();
        Ok(Subspace::span(self.ambient_dim, &vectors))
    }

    /// Orthogonal complement for the standard inner product.
    pub fn orth_complement(&self) -> Subspace {
        if self.is_trivial() {
            return Subspace::full(self.ambient_dim);
        }
        Subspace::kernel_of(&Matrix::from_rows(&self.basis))
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.ambient_dim {
            return Err(Error::Dimension(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        if self.is_trivial() {
            return Ok(vec![<Rational as Scalar>::zero(); self.ambient_dim]);
        }
        let b = self.basis_matrix();
        let bt = b.transpose();
        let gram = bt.mul(&b)?;
        let rhs = bt.mul_vec(v)?;
        let coeffs = gram.solve(&rhs).expect("Gram matrix of a basis is invertible");
        b.mul_vec(&coeffs)
    }
}
