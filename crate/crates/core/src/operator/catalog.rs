//! Named part maps and operators.
//!
//! Matrices are vectorised row-major: entry `(i, j)` of an `n × n` matrix sits
//! at index `i·n + j`. Sign convention: `Curl[ξ]P = P·Anti(ξ)` for `n = 3`
//! and `Curl[ξ]P = P·(−ξ₂, ξ₁)ᵀ` for `n = 2`.

use std::collections::BTreeMap;

use super::{compose_ops, gradient_operator, HomOperator, PartMap, SpaceDesc, SymbolMatrix};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Polynomial;
use crate::scalar::{int, rat, Rational, Scalar};

pub const PART_MAP_NAMES: [&str; 8] = ["id", "dev", "sym", "devsym", "skew", "skewtr", "tr", "transpose"];
pub const BASE_OPERATOR_NAMES: [&str; 5] = ["curl", "div", "grad", "inc", "divdiv3"];

/// `Anti(ζ)`, the matrix with `Anti(ζ)v = ζ × v`.
pub fn anti<F: Scalar>(z: &[F]) -> Matrix<F> {
    assert_eq!(z.len(), 3, "Anti needs a 3-vector");
    let o = F::zero();
    Matrix::from_rows(&[
        vec![o.clone(), z[2].neg(), z[1].clone()],
        vec![z[2].clone(), o.clone(), z[0].neg()],
        vec![z[1].neg(), z[0].clone(), o],
    ])
}

fn canonical(name: &str) -> String {
    let lower = name.trim().to_ascii_lowercase();
    match lower.as_str() {
        "identity" => "id".into(),
        "skew+tr" | "skew_tr" => "skewtr".into(),
        "dev_sym" | "dev sym" => "devsym".into(),
        "t" => "transpose".into(),
        _ => lower,
    }
}

/// Part map on `n × n` matrices by name (case-insensitive).
pub fn part_map(name: &str, n: usize) -> Result<PartMap> {
    let key = canonical(name);
    let d = n * n;
    let nn = int(n as i64);
    let half = rat(1, 2);
    let delta = |a: usize, b: usize| if a == b { int(1) } else { int(0) };
    // entry ((i,j),(k,l)) of the matrix acting on vectorised n×n matrices
    let build = |f: &dyn Fn(usize, usize, usize, usize) -> Rational| {
        let mut m = Matrix::zeros(d, d);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        m.set(i * n + j, k * n + l, f(i, j, k, l));
                    }
                }
            }
        }
        m
    };
    let id = |i, j, k, l| delta(i, k) * delta(j, l);
    let tp = |i, j, k, l| delta(i, l) * delta(j, k);
    let trace = |i, j, k, l| delta(i, j) * delta(k, l);
    let space = SpaceDesc::matrices(n, n);
    let matrix = match key.as_str() {
        "id" => build(&id),
        "dev" => build(&|i, j, k, l| id(i, j, k, l) - trace(i, j, k, l) / &nn),
        "sym" => build(&|i, j, k, l| &half * (id(i, j, k, l) + tp(i, j, k, l))),
        "devsym" => build(&|i, j, k, l| &half * (id(i, j, k, l) + tp(i, j, k, l)) - trace(i, j, k, l) / &nn),
        "skew" => build(&|i, j, k, l| &half * (id(i, j, k, l) - tp(i, j, k, l))),
        "skewtr" => build(&|i, j, k, l| &half * (id(i, j, k, l) - tp(i, j, k, l)) + trace(i, j, k, l)),
        "transpose" => build(&tp),
        "tr" => {
            let mut m = Matrix::zeros(1, d);
            for i in 0..n {
                m.set(0, i * n + i, int(1));
            }
            return PartMap::new("tr", space, SpaceDesc::vectors(1), m);
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    PartMap::new(key, space.clone(), space, matrix)
}

/// Symbol matrix from a closure mapping a domain basis vector index to the
/// polynomial image vector.
fn symbol_from_columns(
    n: usize,
    rows: usize,
    cols: usize,
    column: impl Fn(usize, &[Polynomial]) -> Vec<Polynomial>,
) -> SymbolMatrix {
    let xi: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    let mut entries = vec![Polynomial::zero(n); rows * cols];
    for c in 0..cols {
        for (r, p) in column(c, &xi).into_iter().enumerate() {
            entries[r * cols + c] = p;
        }
    }
    SymbolMatrix {
        rows,
        cols,
        num_vars: n,
        entries,
    }
}

/// `Curl` for `n ∈ {2, 3}` on `n × n` matrix fields, acting row-wise.
pub fn curl(n: usize) -> Result<HomOperator> {
    match n {
        3 => {
            let sym = symbol_from_columns(3, 9, 9, |c, xi| {
                // P = E_{ab}; (P·Anti ξ)_{aj} = Anti(ξ)_{bj}
                let (a, b) = (c / 3, c % 3);
                let z = Polynomial::zero(3);
                let an = [
                    [z.clone(), xi[2].neg(), xi[1].clone()],
                    [xi[2].clone(), z.clone(), xi[0].neg()],
                    [xi[1].neg(), xi[0].clone(), z],
                ];
                let mut col = vec![Polynomial::zero(3); 9];
                for j in 0..3 {
                    col[a * 3 + j] = an[b][j].clone();
                }
                col
            });
            HomOperator::from_symbol(1, SpaceDesc::matrices(3, 3), SpaceDesc::matrices(3, 3), &sym)
        }
        2 => {
            let sym = symbol_from_columns(2, 2, 4, |c, xi| {
                // P = E_{ab}; (P·(−ξ₂, ξ₁)ᵀ)_a = (−ξ₂, ξ₁)_b
                let (a, b) = (c / 2, c % 2);
                let rot = [xi[1].neg(), xi[0].clone()];
                let mut col = vec![Polynomial::zero(2); 2];
                col[a] = rot[b].clone();
                col
            });
            HomOperator::from_symbol(1, SpaceDesc::matrices(2, 2), SpaceDesc::vectors(2), &sym)
        }
        _ => Err(Error::Parameter(format!("Curl is catalogued for n = 2 and n = 3 only, got n = {n}"))),
    }
}

/// Row-wise divergence `P ↦ Pξ` on `n × n` matrix fields.
pub fn div(n: usize) -> Result<HomOperator> {
    let sym = symbol_from_columns(n, n, n * n, |c, xi| {
        let (a, b) = (c / n, c % n);
        let mut col = vec![Polynomial::zero(n); n];
        col[a] = xi[b].clone();
        col
    });
    HomOperator::from_symbol(1, SpaceDesc::matrices(n, n), SpaceDesc::vectors(n), &sym)
}

/// Incompatibility operator `Curl ∘ (·)ᵀ ∘ Curl ∘ (·)ᵀ`, symbol `Anti(ξ)·P·Anti(ξ)ᵀ`.
pub fn inc() -> Result<HomOperator> {
    let c = curl(3)?;
    let t = part_map("transpose", 3)?;
    let half = c.precompose(&t)?;
    compose_ops(&half, &half)
}

/// Second-order operator into `ℝ²` with symbol
/// `P ↦ (ξᵀPξ − ξ₃⟨P₃, ξ⟩, ξ₃⟨P₃, ξ⟩)` where `P₃` is the third row.
pub fn divdiv3() -> Result<HomOperator> {
    let sym = symbol_from_columns(3, 2, 9, |c, xi| {
        let (a, b) = (c / 3, c % 3);
        let quad = xi[a].mul(&xi[b]);
        let third = if a == 2 { xi[2].mul(&xi[b]) } else { Polynomial::zero(3) };
        vec![quad.sub(&third), third]
    });
    HomOperator::from_symbol(2, SpaceDesc::matrices(3, 3), SpaceDesc::vectors(2), &sym)
}

/// Unprefixed catalogue operator; `grad` is excluded since it needs a part map.
pub fn base_operator(name: &str, n: usize) -> Result<HomOperator> {
    match name {
        "curl" => curl(n),
        "div" => div(n),
        "inc" if n == 3 => inc(),
        "divdiv3" if n == 3 => divdiv3(),
        "inc" | "divdiv3" => Err(Error::Parameter(format!("'{name}' is catalogued for n = 3 only"))),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// Catalogue operator by name, e.g. `"curl"`, `"dev sym curl"`, `"sym grad"`.
///
/// Leading part-map names post-compose from right to left. With `grad` as the
/// base they instead form the part map `𝒜` of `v ↦ 𝒜[Dv]`.
pub fn operator(name: &str, n: usize) -> Result<HomOperator> {
    let tokens: Vec<String> = name
        .split_whitespace()
        .map(|t| t.to_ascii_lowercase())
        .collect();
    let Some((base, prefix)) = tokens.split_last() else {
        return Err(Error::UnknownName(name.to_string()));
    };
    let mut maps = Vec::new();
    for t in prefix {
        maps.push(part_map(t, n)?);
    }
    if base == "grad" {
        let mut a = part_map("id", n)?;
        for m in maps.iter().rev() {
            a = m.compose(&a)?;
        }
        return gradient_operator(&a, n);
    }
    let mut op = base_operator(base, n)?;
    for m in maps.iter().rev() {
        op = op.postcompose(m)?;
    }
    Ok(op)
}

/// All catalogued names, part maps first.
pub fn catalog_names() -> BTreeMap<&'static str, Vec<String>> {
    let mut out = BTreeMap::new();
    out.insert("part_maps", PART_MAP_NAMES.iter().map(|s| s.to_string()).collect());
    let mut ops: Vec<String> = BASE_OPERATOR_NAMES.iter().map(|s| s.to_string()).collect();
    for s in ["sym", "dev", "devsym", "skew", "skewtr", "tr"] {
        ops.push(format!("{s} curl"));
        ops.push(format!("{s} grad"));
    }
    ops.push("tr inc".into());
    ops.push("skew inc".into());
    out.insert("operators", ops);
    out
}

/// Standard basis matrix `E_{ij}` vectorised.
pub fn unit_matrix(n: usize, i: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![int(0); n * n];
    v[i * n + j] = int(1);
    v
}

/// Vectorised `𝟙ₙ`.
pub fn identity_vec(n: usize) -> Vec<Rational> {
    let mut v = vec![int(0); n * n];
    for i in 0..n {
        v[i * n + i] = int(1);
    }
    v
}
