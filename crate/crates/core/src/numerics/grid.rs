use crate::error::{Error, Result};
use crate::operator::{HomOperator, PartMap};
use crate::scalar::to_f64;

/// A `V`-valued field sampled at the cell centres of `[-L, L]ⁿ` with `N` cells per axis.
///
/// Cell `(i₀, …, iₙ₋₁)` has linear index `Σ iₐ N^{n-1-a}` and centre
/// `-L + (iₐ + ½)h`; component `c` of that cell sits at `index·components + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    pub n: usize,
    pub half_width: f64,
    pub points: usize,
    pub components: usize,
    pub values: Vec<f64>,
}

impl GridField {
    pub fn zeros(n: usize, half_width: f64, points: usize, components: usize) -> Self {
        GridField {
            n,
            half_width,
            points,
            components,
            values: vec![0.0; points.pow(n as u32) * components],
        }
    }

    /// Samples `f` at every cell centre.
    pub fn from_fn(
        n: usize,
        half_width: f64,
        points: usize,
        components: usize,
        f: impl Fn(&[f64]) -> Vec<f64> + Sync + Send,
    ) -> Self {
        let mut g = GridField::zeros(n, half_width, points, components);
        let slab = points.pow(n as u32 - 1);
        let first: Vec<usize> = (0..points).collect();
        let chunks = crate::par::map(&first, |&i0| {
            let mut out = Vec::with_capacity(slab * components);
            for j in 0..slab {
                let x = g.point(i0 * slab + j);
                let v = f(&x);
                assert_eq!(v.len(), components, "field value has the wrong length");
                out.extend(v);
            }
            out
        });
        for (i0, c) in chunks.into_iter().enumerate() {
            g.values[i0 * slab * components..(i0 + 1) * slab * components].copy_from_slice(&c);
        }
        g
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.points as f64
    }

    pub fn cells(&self) -> usize {
        self.points.pow(self.n as u32)
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.n as i32)
    }

    pub fn index_of(&self, cell: usize) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        let mut c = cell;
        for a in (0..self.n).rev() {
            idx[a] = c % self.points;
            c /= self.points;
        }
        idx
    }

    pub fn point(&self, cell: usize) -> Vec<f64> {
        let h = self.spacing();
        self.index_of(cell)
            .into_iter()
            .map(|i| -self.half_width + (i as f64 + 0.5) * h)
            .collect()
    }

    pub fn value(&self, cell: usize) -> &[f64] {
        &self.values[cell * self.components..(cell + 1) * self.components]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Distance in cells from the boundary to the nearest nonzero value
    /// (`points` for the zero field).
    pub fn support_margin(&self) -> usize {
        let mut margin = self.points;
        for cell in 0..self.cells() {
            if self.value(cell).iter().any(|v| *v != 0.0) {
                for i in self.index_of(cell) {
                    margin = margin.min(i).min(self.points - 1 - i);
                }
            }
        }
        margin
    }

    /// Requires every nonzero value at least `width` cells from the boundary.
    pub fn check_margin(&self, width: usize) -> Result<()> {
        if self.support_margin() < width {
            return Err(Error::Margin { margin: width });
        }
        Ok(())
    }

    fn same_grid(&self, other: &GridField) -> bool {
        self.n == other.n && self.points == other.points && self.half_width == other.half_width
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: f64, other: &GridField, b: f64) -> Result<GridField> {
        if !self.same_grid(other) || self.components != other.components {
            return Err(Error::Shape("fields live on different grids".into()));
        }
        let mut out = self.clone();
        for (o, v) in out.values.iter_mut().zip(&other.values) {
            *o = a * *o + b * v;
        }
        Ok(out)
    }

    /// Central difference `(f(x + heₐ) − f(x − heₐ)) / 2h`, zero outside the grid.
    pub fn derivative(&self, axis: usize) -> GridField {
        let stride = self.points.pow((self.n - 1 - axis) as u32);
        let c = self.components;
        let inv = 1.0 / (2.0 * self.spacing());
        let mut out = GridField::zeros(self.n, self.half_width, self.points, c);
        for cell in 0..self.cells() {
            let i = (cell / stride) % self.points;
            for k in 0..c {
                let up = if i + 1 < self.points { self.values[(cell + stride) * c + k] } else { 0.0 };
                let down = if i > 0 { self.values[(cell - stride) * c + k] } else { 0.0 };
                out.values[cell * c + k] = (up - down) * inv;
            }
        }
        out
    }

    /// `∂^α` by iterated central differences; the factors commute exactly.
    pub fn partial(&self, alpha: &[u32]) -> GridField {
        let mut f = self.clone();
        for (axis, &m) in alpha.iter().enumerate() {
            for _ in 0..m {
                f = f.derivative(axis);
            }
        }
        f
    }

    /// Pointwise `x ↦ M·F(x)` for a `rows × components` matrix.
    pub fn map_pointwise(&self, rows: usize, m: &[f64]) -> GridField {
        let c = self.components;
        assert_eq!(m.len(), rows * c, "matrix shape");
        let mut out = GridField::zeros(self.n, self.half_width, self.points, rows);
        for cell in 0..self.cells() {
            let v = self.value(cell);
            for r in 0..rows {
                let mut s = 0.0;
                for (j, x) in v.iter().enumerate() {
                    s += m[r * c + j] * x;
                }
                out.values[cell * rows + r] = s;
            }
        }
        out
    }
}

/// `𝒜[F]` pointwise.
pub fn apply_part_map(a: &PartMap, f: &GridField) -> Result<GridField> {
    if a.domain.dim != f.components {
        return Err(Error::Shape(format!(
            "part map '{}' acts on dimension {}, field has {} components",
            a.name, a.domain.dim, f.components
        )));
    }
    let m: Vec<f64> = a.matrix.entries().iter().map(to_f64).collect();
    Ok(f.map_pointwise(a.codomain.dim, &m))
}

/// `Σ_{|α|=k} B_α ∂^α F`, requiring a support margin of `k + 1` cells.
pub fn apply_operator(op: &HomOperator, f: &GridField) -> Result<GridField> {
    if op.dim_n() != f.n || op.domain().dim != f.components {
        return Err(Error::Shape(format!(
            "operator on R^{} with {} components, field on R^{} with {}",
            op.dim_n(),
            op.domain().dim,
            f.n,
            f.components
        )));
    }
    f.check_margin(op.order() as usize + 1)?;
    let rows = op.codomain().dim;
    let mut out = GridField::zeros(f.n, f.half_width, f.points, rows);
    for (alpha, b) in op.coefficients() {
        let m: Vec<f64> = b.entries().iter().map(to_f64).collect();
        let term = f.partial(alpha).map_pointwise(rows, &m);
        for (o, t) in out.values.iter_mut().zip(&term.values) {
            *o += t;
        }
    }
    Ok(out)
}

/// Multi-indices of total degree `j` in `n` variables, lexicographically descending.
pub fn multi_indices(n: usize, j: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if j == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=j).rev() {
        for mut rest in multi_indices(n - 1, j - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `(Σ_x |F(x)|^p hⁿ)^{1/p}` with the Euclidean norm on values; `p = ∞` gives the max.
pub fn lp_norm(f: &GridField, p: f64) -> f64 {
    assert!(p >= 1.0, "p ≥ 1");
    let c = f.components;
    let pointwise = (0..f.cells()).map(|cell| f.values[cell * c..(cell + 1) * c].iter().map(|v| v * v).sum::<f64>().sqrt());
    if p.is_infinite() {
        return pointwise.fold(0.0, f64::max);
    }
    let s: f64 = pointwise.map(|v| v.powf(p)).sum();
    (s * f.cell_volume()).powf(1.0 / p)
}

/// `‖D^j F‖_{L^q}` with pointwise norm `(Σ_{|α|=j} |∂^αF|²)^{1/2}`.
pub fn sobolev_seminorm(f: &GridField, j: u32, q: f64) -> f64 {
    if j == 0 {
        return lp_norm(f, q);
    }
    let parts: Vec<GridField> = multi_indices(f.n, j).iter().map(|a| f.partial(a)).collect();
    let mut stacked = GridField::zeros(f.n, f.half_width, f.points, f.components * parts.len());
    let w = stacked.components;
    for cell in 0..f.cells() {
        for (k, p) in parts.iter().enumerate() {
            stacked.values[cell * w + k * f.components..cell * w + (k + 1) * f.components].copy_from_slice(p.value(cell));
        }
    }
    lp_norm(&stacked, q)
}
