//! Finite k-linear categories given by hom bases and structure constants.

mod builder;
mod constructions;
mod convex;
pub mod fixtures;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Field, Scalar};

pub use builder::CategoryBuilder;
pub use constructions::{Embedding, Partition};

/// Sparse coefficient vector in the basis of one hom space.
pub type Coeffs = Vec<(usize, Scalar)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("categories are over different fields ({0} and {1})")]
    FieldMismatch(Field, Field),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("malformed category: {0}")]
    Malformed(String),
}

/// A basis morphism with its position in the global enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub src: usize,
    pub tgt: usize,
    /// Index inside the basis of `hom(src, tgt)`.
    pub local: usize,
    pub id: String,
}

/// A finite k-linear category.
///
/// Objects are numbered `0..n`. Basis morphisms are numbered globally,
/// sorted by `(source, target)` and then by their position in the hom basis.
/// `compose[(g, f)]` is the expansion of `g∘f` in the basis of
/// `hom(src f, tgt g)`; missing entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinLinCategory {
    field: Field,
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    /// `(x, y) → (first global index, dim)` for non-zero hom spaces.
    homs: BTreeMap<(usize, usize), (usize, usize)>,
    identity: Vec<Coeffs>,
    compose: HashMap<(usize, usize), Coeffs>,
}

impl FinLinCategory {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, id: &str) -> Result<usize, CategoryError> {
        self.objects
            .iter()
            .position(|o| o == id)
            .ok_or_else(|| CategoryError::UnknownObject(id.to_string()))
    }

    pub fn object_indices<S: AsRef<str>>(&self, ids: &[S]) -> Result<Vec<usize>, CategoryError> {
        ids.iter().map(|s| self.object_index(s.as_ref())).collect()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, g: usize) -> &Morphism {
        &self.morphisms[g]
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.homs.get(&(x, y)).map_or(0, |h| h.1)
    }

    /// Global indices of the basis of `hom(x, y)`.
    pub fn hom_range(&self, x: usize, y: usize) -> std::ops::Range<usize> {
        match self.homs.get(&(x, y)) {
            Some(&(start, dim)) => start..start + dim,
            None => 0..0,
        }
    }

    pub fn hom_ids(&self, x: usize, y: usize) -> Vec<&str> {
        self.hom_range(x, y).map(|g| self.morphisms[g].id.as_str()).collect()
    }

    /// Non-zero hom spaces as `(x, y, dim)`.
    pub fn nonzero_homs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.homs.iter().map(|(&(x, y), &(_, d))| (x, y, d))
    }

    pub fn total_hom_dim(&self) -> usize {
        self.morphisms.len()
    }

    /// Global index of the basis morphism `id` in `hom(x, y)`.
    pub fn find_morphism(&self, x: usize, y: usize, id: &str) -> Option<usize> {
        self.hom_range(x, y).find(|g| self.morphisms[*g].id == id)
    }

    pub fn identity(&self, x: usize) -> &Coeffs {
        &self.identity[x]
    }

    /// Identity of `x` as a dense vector in `hom(x, x)`.
    pub fn identity_dense(&self, x: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.hom_dim(x, x)];
        for (i, c) in &self.identity[x] {
            v[*i] = c.clone();
        }
        v
    }

    /// Expansion of `g∘f` for basis morphisms; empty when zero or not composable.
    pub fn compose_basis(&self, g: usize, f: usize) -> &[(usize, Scalar)] {
        self.compose.get(&(g, f)).map_or(&[], |v| v.as_slice())
    }

    /// `g∘f` for dense vectors `f ∈ hom(x, y)`, `g ∈ hom(y, z)`.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &[Scalar], f: &[Scalar]) -> Vec<Scalar> {
        let field = self.field;
        let mut out = vec![Scalar::zero(); self.hom_dim(x, z)];
        let (rf, rg) = (self.hom_range(x, y), self.hom_range(y, z));
        for (i, fi) in rf.clone().zip(f) {
            if fi.is_zero() {
                continue;
            }
            for (j, gj) in rg.clone().zip(g) {
                if gj.is_zero() {
                    continue;
                }
                let c = field.mul(fi, gj);
                for (k, v) in self.compose_basis(j, i) {
                    out[*k] = field.add(&out[*k], &field.mul(&c, v));
                }
            }
        }
        out
    }

    /// Every non-zero structure constant as `(g, f, g∘f)`.
    pub fn composition_table(&self) -> Vec<(usize, usize, &Coeffs)> {
        let mut t: Vec<_> = self.compose.iter().map(|(&(g, f), v)| (g, f, v)).collect();
        t.sort_by_key(|(g, f, _)| (*g, *f));
        t
    }

    /// Human-readable name of a basis morphism, `src->tgt:id`.
    pub fn describe(&self, g: usize) -> String {
        let m = &self.morphisms[g];
        format!("{}->{}:{}", self.objects[m.src], self.objects[m.tgt], m.id)
    }

    /// Checks associativity on all composable basis triples and both identity laws.
    pub fn validate(&self) -> ValidationReport {
        let field = self.field;
        let mut violations = Vec::new();
        for x in 0..self.num_objects() {
            let id = self.identity_dense(x);
            if self.hom_dim(x, x) == 0 {
                violations.push(Violation::MissingIdentity { object: self.objects[x].clone() });
            }
            for y in 0..self.num_objects() {
                for f in self.hom_range(x, y) {
                    let fv = unit(self.hom_dim(x, y), self.morphisms[f].local);
                    let idy = self.identity_dense(y);
                    if self.compose(x, y, y, &idy, &fv) != fv {
                        violations.push(Violation::LeftIdentity { f: self.describe(f) });
                    }
                    if self.compose(x, x, y, &fv, &id) != fv {
                        violations.push(Violation::RightIdentity { f: self.describe(f) });
                    }
                }
            }
        }
        for &(x, y) in self.homs.keys() {
            for z in 0..self.num_objects() {
                for w in 0..self.num_objects() {
                    if self.hom_dim(y, z) == 0 || self.hom_dim(z, w) == 0 {
                        continue;
                    }
                    for f in self.hom_range(x, y) {
                        for g in self.hom_range(y, z) {
                            let gf = dense(self.hom_dim(x, z), self.compose_basis(g, f));
                            for h in self.hom_range(z, w) {
                                let hg = dense(self.hom_dim(y, w), self.compose_basis(h, g));
                                let hv = unit(self.hom_dim(z, w), self.morphisms[h].local);
                                let fv = unit(self.hom_dim(x, y), self.morphisms[f].local);
                                let left = self.compose(x, z, w, &hv, &gf);
                                let right = self.compose(x, y, w, &hg, &fv);
                                if left.iter().zip(&right).any(|(a, b)| !field.sub(a, b).is_zero()) {
                                    violations.push(Violation::Associativity {
                                        h: self.describe(h),
                                        g: self.describe(g),
                                        f: self.describe(f),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::from_integer(1.into());
    v
}

pub(crate) fn dense(n: usize, c: &[(usize, Scalar)]) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    for (i, x) in c {
        v[*i] = x.clone();
    }
    v
}

pub(crate) fn sparse(v: &[Scalar]) -> Coeffs {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// A failed axiom, with morphisms named `src->tgt:id`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    MissingIdentity { object: String },
    LeftIdentity { f: String },
    RightIdentity { f: String },
    Associativity { h: String, g: String, f: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingIdentity { object } => write!(out, "object {object} has no identity"),
            Violation::LeftIdentity { f } => write!(out, "id∘f ≠ f for f = {f}"),
            Violation::RightIdentity { f } => write!(out, "f∘id ≠ f for f = {f}"),
            Violation::Associativity { h, g, f } => write!(out, "(h∘g)∘f ≠ h∘(g∘f) for h = {h}, g = {g}, f = {f}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures;

    #[test]
    fn fixtures_validate() {
        for c in [fixtures::one(), fixtures::a2(), fixtures::a3(), fixtures::kronecker(), fixtures::full2()] {
            assert!(c.validate().is_valid(), "{:?}", c.validate());
        }
    }

    #[test]
    fn broken_identity_is_reported() {
        let c = fixtures::broken_a2();
        let r = c.validate();
        assert!(r.violations.iter().any(|v| matches!(v, super::Violation::LeftIdentity { f } if f == "1->2:a")));
    }
}
