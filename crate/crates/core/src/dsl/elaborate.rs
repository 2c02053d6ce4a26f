use std::collections::BTreeMap;

use super::parser::{parse, Expr};
use crate::error::{Error, Result};
use crate::operator::catalog::{base_operator, identity_vec, part_map, BASE_OPERATOR_NAMES, PART_MAP_NAMES};
use crate::operator::{compose_ops, gradient_operator, HomOperator, PartMap, SpaceDesc};
use crate::linalg::Matrix;
use crate::scalar::Rational;

/// Result of elaborating an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Elaborated {
    PartMap(PartMap),
    Operator(HomOperator),
}

impl Elaborated {
    pub fn into_part_map(self) -> Result<PartMap> {
        match self {
            Elaborated::PartMap(p) => Ok(p),
            Elaborated::Operator(_) => Err(Error::Shape("expected a part map, found a differential operator".into())),
        }
    }

    pub fn into_operator(self) -> Result<HomOperator> {
        match self {
            Elaborated::Operator(o) => Ok(o),
            Elaborated::PartMap(_) => Err(Error::Shape("expected a differential operator, found a part map".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ElabOptions {
    /// In a sum, embed scalar-valued summands via `t ↦ t𝟙ₙ` next to matrix-valued ones.
    pub embed_scalars: bool,
}

impl Default for ElabOptions {
    fn default() -> Self {
        ElabOptions { embed_scalars: true }
    }
}

/// User-registered names, looked up after the built-in catalogue.
#[derive(Clone, Debug, Default)]
pub struct Registry {
    part_maps: BTreeMap<String, PartMap>,
    operators: BTreeMap<String, HomOperator>,
}

fn is_builtin(name: &str) -> bool {
    PART_MAP_NAMES.contains(&name) || BASE_OPERATOR_NAMES.contains(&name)
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    fn key(&self, name: &str) -> Result<String> {
        let key = name.to_ascii_lowercase();
        let valid = key.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid || is_builtin(&key) || self.part_maps.contains_key(&key) || self.operators.contains_key(&key) {
            return Err(Error::Parameter(format!("cannot register name '{name}'")));
        }
        Ok(key)
    }

    pub fn register_part_map(&mut self, name: &str, map: PartMap) -> Result<()> {
        let key = self.key(name)?;
        self.part_maps.insert(key, map);
        Ok(())
    }

    pub fn register_operator(&mut self, name: &str, op: HomOperator) -> Result<()> {
        let key = self.key(name)?;
        self.operators.insert(key, op);
        Ok(())
    }

    fn lookup(&self, name: &str, n: usize) -> Result<Elaborated> {
        if PART_MAP_NAMES.contains(&name) {
            return part_map(name, n).map(Elaborated::PartMap);
        }
        if name == "grad" {
            return gradient_operator(&part_map("id", n)?, n).map(Elaborated::Operator);
        }
        if BASE_OPERATOR_NAMES.contains(&name) {
            return base_operator(name, n).map(Elaborated::Operator);
        }
        if let Some(p) = self.part_maps.get(name) {
            return Ok(Elaborated::PartMap(p.clone()));
        }
        if let Some(o) = self.operators.get(name) {
            if o.dim_n() != n {
                return Err(Error::Shape(format!("'{name}' acts on R^{}, not R^{n}", o.dim_n())));
            }
            return Ok(Elaborated::Operator(o.clone()));
        }
        Err(Error::UnknownName(name.to_string()))
    }
}

/// `t ↦ t𝟙ₙ` from `R1` into `n × n` matrices.
fn scalar_embedding(n: usize) -> PartMap {
    let m = Matrix::from_columns(n * n, &[identity_vec(n)]);
    PartMap::new("embed", SpaceDesc::vectors(1), SpaceDesc::matrices(n, n), m).expect("shapes agree")
}

fn apply(outer: Elaborated, inner: Elaborated) -> Result<Elaborated> {
    Ok(match (outer, inner) {
        (Elaborated::PartMap(s), Elaborated::PartMap(t)) => Elaborated::PartMap(s.compose(&t)?),
        (Elaborated::PartMap(s), Elaborated::Operator(b)) => Elaborated::Operator(b.postcompose(&s)?),
        (Elaborated::Operator(b), Elaborated::PartMap(t)) => Elaborated::Operator(b.precompose(&t)?),
        (Elaborated::Operator(b), Elaborated::Operator(c)) => Elaborated::Operator(compose_ops(&b, &c)?),
    })
}

fn codomain(e: &Elaborated) -> &SpaceDesc {
    match e {
        Elaborated::PartMap(p) => &p.codomain,
        Elaborated::Operator(o) => o.codomain(),
    }
}

fn embed(e: Elaborated, n: usize) -> Result<Elaborated> {
    apply(Elaborated::PartMap(scalar_embedding(n)), e)
}

fn add(x: Elaborated, y: Elaborated) -> Result<Elaborated> {
    match (x, y) {
        (Elaborated::Operator(a), Elaborated::Operator(b)) => Ok(Elaborated::Operator(a.add(&b)?)),
        (Elaborated::PartMap(a), Elaborated::PartMap(b)) => {
            if a.domain != b.domain || a.codomain != b.codomain {
                return Err(Error::Label {
                    expected: format!("{} -> {}", a.domain.label, a.codomain.label),
                    found: format!("{} -> {}", b.domain.label, b.codomain.label),
                });
            }
            let m = a.matrix.add(&b.matrix)?;
            Ok(Elaborated::PartMap(PartMap::new(
                format!("{} + {}", a.name, b.name),
                a.domain,
                a.codomain,
                m,
            )?))
        }
        _ => Err(Error::Shape("cannot add a part map to a differential operator".into())),
    }
}

fn scale(c: &Rational, e: Elaborated) -> Elaborated {
    match e {
        Elaborated::PartMap(mut p) => {
            p.matrix = p.matrix.scale(c);
            p.name = format!("{c} * {}", p.name);
            Elaborated::PartMap(p)
        }
        Elaborated::Operator(o) => Elaborated::Operator(o.scale(c)),
    }
}

/// Elaborates a tree on `ℝⁿ`.
pub fn elaborate(expr: &Expr, n: usize, registry: &Registry, opts: ElabOptions) -> Result<Elaborated> {
    match expr {
        Expr::Name(name) => registry.lookup(name, n),
        Expr::Apply(name, arg) => {
            let outer = registry.lookup(name, n)?;
            let inner = elaborate(arg, n, registry, opts)?;
            apply(outer, inner)
        }
        Expr::Scale(c, e) => Ok(scale(c, elaborate(e, n, registry, opts)?)),
        Expr::Sum(terms) => {
            let mut parts = terms
                .iter()
                .map(|t| elaborate(t, n, registry, opts))
                .collect::<Result<Vec<_>>>()?;
            let matrix_valued = parts.iter().any(|p| codomain(p).shape == Some((n, n)));
            if opts.embed_scalars && matrix_valued {
                parts = parts
                    .into_iter()
                    .map(|p| if codomain(&p).dim == 1 { embed(p, n) } else { Ok(p) })
                    .collect::<Result<Vec<_>>>()?;
            }
            let mut it = parts.into_iter();
            let first = it.next().expect("sums have at least two terms");
            it.try_fold(first, add)
        }
    }
}

/// Parses and elaborates with default options and no registered names.
pub fn compile(text: &str, n: usize) -> Result<Elaborated> {
    elaborate(&parse(text)?, n, &Registry::default(), ElabOptions::default())
}

pub fn compile_operator(text: &str, n: usize) -> Result<HomOperator> {
    compile(text, n)?.into_operator()
}

pub fn compile_part_map(text: &str, n: usize) -> Result<PartMap> {
    compile(text, n)?.into_part_map()
}
