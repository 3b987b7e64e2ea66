//! Modules and bimodules over finite k-linear categories.
//!
//! A right module `M` assigns `M_x` to each object and to `f: x → y` a map
//! `M_y → M_x`; a left module sends `f` to `M_x → M_y`. A bimodule over
//! `(A, B)` has spaces `_aM_b`, a left `A`-action and a right `B`-action.

mod hom;
mod restrict;
mod tensor;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::category::{fixtures, CategoryError, FinLinCategory};
use crate::linalg::{Field, LinalgError, Mat, Scalar};

pub use hom::{bimodule_hom, check_bimodule_map, hom_k, is_natural, nat_hom, BimoduleMap, MapCheck, NatTrans};
pub use restrict::{
    adjunction_alpha, adjunction_beta, adjunction_theta, adjunction_zeta, extend, extend_along, extend_bimodule,
    restrict, restrict_along, restrict_bimodule_along,
};
pub use tensor::{left_multiplication, right_multiplication, tensor_over_cat, InducedCheck, TensorProduct};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("malformed module: {0}")]
    Shape(String),
    #[error("modules live over different categories")]
    BaseMismatch,
    #[error("modules have different variance")]
    VarianceMismatch,
    #[error("inner category of the first factor differs from the outer category of the second")]
    CategoryMismatch,
    #[error("objects do not span a full convex subcategory")]
    NotConvex,
    #[error("family is not a natural transformation: {0}")]
    NotNatural(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Left,
    Right,
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variance::Left => "left",
            Variance::Right => "right",
        })
    }
}

pub(crate) fn same_category(a: &Arc<FinLinCategory>, b: &Arc<FinLinCategory>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A one-sided module, with one action matrix per basis morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    variance: Variance,
    base: Arc<FinLinCategory>,
    dims: Vec<usize>,
    action: Vec<Mat>,
}

impl ModuleRep {
    pub fn new(
        variance: Variance,
        base: Arc<FinLinCategory>,
        dims: Vec<usize>,
        action: Vec<Mat>,
    ) -> Result<ModuleRep, ModuleError> {
        if dims.len() != base.num_objects() {
            return Err(ModuleError::Shape(format!(
                "{} spaces for {} objects",
                dims.len(),
                base.num_objects()
            )));
        }
        if action.len() != base.num_morphisms() {
            return Err(ModuleError::Shape(format!(
                "{} action matrices for {} basis morphisms",
                action.len(),
                base.num_morphisms()
            )));
        }
        for (g, a) in action.iter().enumerate() {
            let m = base.morphism(g);
            let (rows, cols) = match variance {
                Variance::Left => (dims[m.tgt], dims[m.src]),
                Variance::Right => (dims[m.src], dims[m.tgt]),
            };
            if (a.rows(), a.cols()) != (rows, cols) || a.field() != base.field() {
                return Err(ModuleError::Shape(format!(
                    "action of {} is {}x{}, expected {rows}x{cols}",
                    base.describe(g),
                    a.rows(),
                    a.cols()
                )));
            }
        }
        Ok(ModuleRep { variance, base, dims, action })
    }

    /// The module with all spaces zero.
    pub fn zero(variance: Variance, base: Arc<FinLinCategory>) -> ModuleRep {
        let f = base.field();
        let action = (0..base.num_morphisms()).map(|_| Mat::zeros(f, 0, 0)).collect();
        ModuleRep { variance, dims: vec![0; base.num_objects()], base, action }
    }

    /// Builds a module from a function giving the action of each basis morphism.
    pub fn from_fn(
        variance: Variance,
        base: Arc<FinLinCategory>,
        dims: Vec<usize>,
        act: impl Fn(usize) -> Mat,
    ) -> ModuleRep {
        let action = (0..base.num_morphisms()).map(act).collect();
        ModuleRep::new(variance, base, dims, action).expect("action shapes are consistent")
    }

    /// The representable right module `hom(−, x)`: `f: y → y'` acts by `h ↦ h∘f`.
    pub fn representable_right(base: Arc<FinLinCategory>, x: usize) -> ModuleRep {
        let c = base.clone();
        let dims = (0..c.num_objects()).map(|y| c.hom_dim(y, x)).collect();
        ModuleRep::from_fn(Variance::Right, base, dims, |f| {
            let m = c.morphism(f);
            composition_matrix(&c, x, |h| c.compose_basis(h, f), m.tgt, m.src)
        })
    }

    /// The representable left module `hom(x, −)`: `f: y → y'` acts by `h ↦ f∘h`.
    pub fn representable_left(base: Arc<FinLinCategory>, x: usize) -> ModuleRep {
        let c = base.clone();
        let dims = (0..c.num_objects()).map(|y| c.hom_dim(x, y)).collect();
        ModuleRep::from_fn(Variance::Left, base, dims, |f| {
            let m = c.morphism(f);
            let src = c.hom_range(x, m.src);
            let tgt_dim = c.hom_dim(x, m.tgt);
            let trip = src.enumerate().flat_map(|(col, h)| {
                c.compose_basis(f, h).iter().map(move |(r, v)| (*r, col, v.clone())).collect::<Vec<_>>()
            });
            Mat::from_triplets(c.field(), tgt_dim, c.hom_dim(x, m.src), trip)
        })
    }

    /// The simple module at `x`, which must have a one-dimensional endomorphism space.
    pub fn simple(variance: Variance, base: Arc<FinLinCategory>, x: usize) -> Result<ModuleRep, ModuleError> {
        if base.hom_dim(x, x) != 1 {
            return Err(ModuleError::Shape(format!(
                "object `{}` has a non-trivial endomorphism space",
                base.objects()[x]
            )));
        }
        let f = base.field();
        let id = base.identity(x).first().map(|(_, v)| v.clone()).unwrap_or_else(|| f.zero());
        let inv = f.inv(&id).ok_or_else(|| ModuleError::Shape("identity is zero".into()))?;
        let c = base.clone();
        let dims = (0..c.num_objects()).map(|y| usize::from(y == x)).collect();
        Ok(ModuleRep::from_fn(variance, base, dims, |g| {
            let m = c.morphism(g);
            if m.src == x && m.tgt == x {
                Mat::from_triplets(f, 1, 1, [(0, 0, inv.clone())])
            } else {
                let d = |y: usize| usize::from(y == x);
                match variance {
                    Variance::Left => Mat::zeros(f, d(m.tgt), d(m.src)),
                    Variance::Right => Mat::zeros(f, d(m.src), d(m.tgt)),
                }
            }
        }))
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn base(&self) -> &Arc<FinLinCategory> {
        &self.base
    }

    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn action(&self, g: usize) -> &Mat {
        &self.action[g]
    }

    pub fn actions(&self) -> &[Mat] {
        &self.action
    }

    /// Action of the morphism with dense coefficients `v` in `hom(x, y)`.
    pub fn act_vec(&self, x: usize, y: usize, v: &[Scalar]) -> Mat {
        let f = self.field();
        let (r, c) = match self.variance {
            Variance::Left => (self.dims[y], self.dims[x]),
            Variance::Right => (self.dims[x], self.dims[y]),
        };
        let mut acc = Mat::zeros(f, r, c);
        for (g, coeff) in self.base.hom_range(x, y).zip(v) {
            if *coeff != f.zero() {
                acc = acc.add(&self.action[g].scale(coeff));
            }
        }
        acc
    }

    /// The same data read as a module of the other variance over the opposite category.
    pub fn to_opposite(&self) -> ModuleRep {
        let op = Arc::new(self.base.opposite());
        let variance = match self.variance {
            Variance::Left => Variance::Right,
            Variance::Right => Variance::Left,
        };
        let action = op
            .morphisms()
            .iter()
            .map(|m| self.action[self.base.hom_range(m.tgt, m.src).start + m.local].clone())
            .collect();
        ModuleRep { variance, base: op, dims: self.dims.clone(), action }
    }

    /// A right module as a `ONE`-`C` bimodule, a left module as a `C`-`ONE` bimodule.
    pub fn as_bimodule(&self) -> BimoduleRep {
        let f = self.field();
        let one = Arc::new(fixtures::one_over(f));
        let c = self.base.clone();
        match self.variance {
            Variance::Right => {
                let dims = vec![self.dims.clone()];
                let left = vec![self.dims.iter().map(|d| Mat::identity(f, *d)).collect()];
                let right = self.action.iter().map(|a| vec![a.clone()]).collect();
                BimoduleRep::new(one, c, dims, left, right).expect("module data is consistent")
            }
            Variance::Left => {
                let dims = self.dims.iter().map(|d| vec![*d]).collect();
                let left = self.action.iter().map(|a| vec![a.clone()]).collect();
                let right = vec![self.dims.iter().map(|d| Mat::identity(f, *d)).collect()];
                BimoduleRep::new(c, one, dims, left, right).expect("module data is consistent")
            }
        }
    }

    /// Checks identities and functoriality on every composable basis pair.
    pub fn validate(&self) -> ModuleReport {
        let c = &self.base;
        let f = c.field();
        let mut violations = Vec::new();
        for x in 0..c.num_objects() {
            let id = self.act_vec(x, x, &c.identity_dense(x));
            if id != Mat::identity(f, self.dims[x]) {
                violations.push(ModuleViolation::Identity { object: c.objects()[x].clone(), side: None });
            }
        }
        for (x, y, _) in c.nonzero_homs() {
            for z in 0..c.num_objects() {
                for fi in c.hom_range(x, y) {
                    for gi in c.hom_range(y, z) {
                        let gf = crate::category::dense(c.hom_dim(x, z), c.compose_basis(gi, fi));
                        let lhs = self.act_vec(x, z, &gf);
                        let rhs = match self.variance {
                            Variance::Left => self.action[gi].mul(&self.action[fi]),
                            Variance::Right => self.action[fi].mul(&self.action[gi]),
                        };
                        if lhs != rhs {
                            violations.push(ModuleViolation::Functoriality {
                                g: c.describe(gi),
                                f: c.describe(fi),
                                side: None,
                            });
                        }
                    }
                }
            }
        }
        ModuleReport { violations }
    }
}

/// Matrix of `h ↦ comp(h)` from `hom(src_obj, x)` to `hom(tgt_obj, x)`.
fn composition_matrix<'a>(
    c: &'a FinLinCategory,
    x: usize,
    comp: impl Fn(usize) -> &'a [(usize, Scalar)],
    src_obj: usize,
    tgt_obj: usize,
) -> Mat {
    let trip = c
        .hom_range(src_obj, x)
        .enumerate()
        .flat_map(|(col, h)| comp(h).iter().map(move |(r, v)| (*r, col, v.clone())).collect::<Vec<_>>());
    Mat::from_triplets(c.field(), c.hom_dim(tgt_obj, x), c.hom_dim(src_obj, x), trip)
}

/// A bimodule: `_aM_b` for `a` in the outer and `b` in the inner category.
///
/// `left[f][b]` is the action of outer `f: a → a'` as `_aM_b → _a'M_b`;
/// `right[g][a]` is the action of inner `g: b → b'` as `_aM_b' → _aM_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleRep {
    outer: Arc<FinLinCategory>,
    inner: Arc<FinLinCategory>,
    dims: Vec<Vec<usize>>,
    left: Vec<Vec<Mat>>,
    right: Vec<Vec<Mat>>,
}

impl BimoduleRep {
    pub fn new(
        outer: Arc<FinLinCategory>,
        inner: Arc<FinLinCategory>,
        dims: Vec<Vec<usize>>,
        left: Vec<Vec<Mat>>,
        right: Vec<Vec<Mat>>,
    ) -> Result<BimoduleRep, ModuleError> {
        let bad = |m: String| Err(ModuleError::Shape(m));
        if outer.field() != inner.field() {
            return Err(CategoryError::FieldMismatch(outer.field(), inner.field()).into());
        }
        let (na, nb) = (outer.num_objects(), inner.num_objects());
        if dims.len() != na || dims.iter().any(|r| r.len() != nb) {
            return bad(format!("dimension table must be {na}x{nb}"));
        }
        if left.len() != outer.num_morphisms() || right.len() != inner.num_morphisms() {
            return bad("one action family per basis morphism is required".into());
        }
        for (g, fam) in left.iter().enumerate() {
            let m = outer.morphism(g);
            if fam.len() != nb {
                return bad(format!("left action of {} needs {nb} matrices", outer.describe(g)));
            }
            for (b, a) in fam.iter().enumerate() {
                if (a.rows(), a.cols()) != (dims[m.tgt][b], dims[m.src][b]) {
                    return bad(format!("left action of {} at inner object {b} has the wrong shape", outer.describe(g)));
                }
            }
        }
        for (g, fam) in right.iter().enumerate() {
            let m = inner.morphism(g);
            if fam.len() != na {
                return bad(format!("right action of {} needs {na} matrices", inner.describe(g)));
            }
            for (a, mat) in fam.iter().enumerate() {
                if (mat.rows(), mat.cols()) != (dims[a][m.src], dims[a][m.tgt]) {
                    return bad(format!("right action of {} at outer object {a} has the wrong shape", inner.describe(g)));
                }
            }
        }
        Ok(BimoduleRep { outer, inner, dims, left, right })
    }

    pub fn from_fn(
        outer: Arc<FinLinCategory>,
        inner: Arc<FinLinCategory>,
        dims: Vec<Vec<usize>>,
        left: impl Fn(usize, usize) -> Mat,
        right: impl Fn(usize, usize) -> Mat,
    ) -> BimoduleRep {
        let l = (0..outer.num_morphisms())
            .map(|g| (0..inner.num_objects()).map(|b| left(g, b)).collect())
            .collect();
        let r = (0..inner.num_morphisms())
            .map(|g| (0..outer.num_objects()).map(|a| right(g, a)).collect())
            .collect();
        BimoduleRep::new(outer, inner, dims, l, r).expect("action shapes are consistent")
    }

    /// `_yC_x = hom(x, y)` with composition on both sides.
    pub fn regular(c: Arc<FinLinCategory>) -> BimoduleRep {
        let n = c.num_objects();
        let dims = (0..n).map(|y| (0..n).map(|x| c.hom_dim(x, y)).collect()).collect();
        let cl = c.clone();
        let cr = c.clone();
        BimoduleRep::from_fn(
            c.clone(),
            c,
            dims,
            move |f, x| {
                let m = cl.morphism(f);
                let trip = cl.hom_range(x, m.src).enumerate().flat_map(|(col, h)| {
                    cl.compose_basis(f, h).iter().map(move |(r, v)| (*r, col, v.clone())).collect::<Vec<_>>()
                });
                Mat::from_triplets(cl.field(), cl.hom_dim(x, m.tgt), cl.hom_dim(x, m.src), trip)
            },
            move |g, y| {
                let m = cr.morphism(g);
                composition_matrix(&cr, y, |h| cr.compose_basis(h, g), m.tgt, m.src)
            },
        )
    }

    /// The zero bimodule.
    pub fn zero(outer: Arc<FinLinCategory>, inner: Arc<FinLinCategory>) -> BimoduleRep {
        let f = outer.field();
        let dims = vec![vec![0; inner.num_objects()]; outer.num_objects()];
        BimoduleRep::from_fn(outer, inner, dims, |_, _| Mat::zeros(f, 0, 0), |_, _| Mat::zeros(f, 0, 0))
    }

    pub fn outer(&self) -> &Arc<FinLinCategory> {
        &self.outer
    }

    pub fn inner(&self) -> &Arc<FinLinCategory> {
        &self.inner
    }

    pub fn field(&self) -> Field {
        self.outer.field()
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    pub fn dim(&self, a: usize, b: usize) -> usize {
        self.dims[a][b]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().flatten().sum()
    }

    pub fn left(&self, f: usize, b: usize) -> &Mat {
        &self.left[f][b]
    }

    pub fn right(&self, g: usize, a: usize) -> &Mat {
        &self.right[g][a]
    }

    /// Left action of dense `v ∈ hom_outer(a, a')` on `_aM_b`.
    pub fn left_vec(&self, a: usize, a2: usize, b: usize, v: &[Scalar]) -> Mat {
        let f = self.field();
        let mut acc = Mat::zeros(f, self.dims[a2][b], self.dims[a][b]);
        for (g, c) in self.outer.hom_range(a, a2).zip(v) {
            if *c != f.zero() {
                acc = acc.add(&self.left[g][b].scale(c));
            }
        }
        acc
    }

    /// Right action of dense `v ∈ hom_inner(b, b')` on `_aM_b'`.
    pub fn right_vec(&self, b: usize, b2: usize, a: usize, v: &[Scalar]) -> Mat {
        let f = self.field();
        let mut acc = Mat::zeros(f, self.dims[a][b], self.dims[a][b2]);
        for (g, c) in self.inner.hom_range(b, b2).zip(v) {
            if *c != f.zero() {
                acc = acc.add(&self.right[g][a].scale(c));
            }
        }
        acc
    }

    /// Reads a `ONE`-`C` bimodule as a right `C`-module.
    pub fn as_right_module(&self) -> Option<ModuleRep> {
        if self.outer.num_objects() != 1 || self.outer.total_hom_dim() != 1 {
            return None;
        }
        let action = self.right.iter().map(|v| v[0].clone()).collect();
        ModuleRep::new(Variance::Right, self.inner.clone(), self.dims[0].clone(), action).ok()
    }

    /// The left module over `outer ⊠ inner^op` on which `f*g` acts by `m ↦ f·m·g`.
    pub fn to_enveloping_module(&self) -> ModuleRep {
        let (a_cat, b_cat) = (&self.outer, &self.inner);
        let b_op = b_cat.opposite();
        let env = Arc::new(a_cat.box_tensor(&b_op).expect("same field"));
        let nb = b_cat.num_objects();
        let dims = (0..a_cat.num_objects())
            .flat_map(|a| (0..nb).map(move |b| (a, b)))
            .map(|(a, b)| self.dims[a][b])
            .collect();
        let e = env.clone();
        ModuleRep::from_fn(Variance::Left, env, dims, |g| {
            let m = e.morphism(g);
            let (a, b) = (m.src / nb, m.src % nb);
            let (a2, b2) = (m.tgt / nb, m.tgt % nb);
            // hom_op(b, b2) = hom(b2, b)
            let width = b_cat.hom_dim(b2, b);
            let (fi, gi) = (m.local / width, m.local % width);
            let f_glob = a_cat.hom_range(a, a2).start + fi;
            let g_glob = b_cat.hom_range(b2, b).start + gi;
            self.left[f_glob][b2].mul(&self.right[g_glob][a])
        })
    }

    /// Identities, functoriality of both actions, and commutation of the two sides.
    pub fn validate(&self) -> ModuleReport {
        let f = self.field();
        let mut violations = Vec::new();
        let (oc, ic) = (&self.outer, &self.inner);
        for a in 0..oc.num_objects() {
            for b in 0..ic.num_objects() {
                let idl = self.left_vec(a, a, b, &oc.identity_dense(a));
                if idl != Mat::identity(f, self.dims[a][b]) {
                    violations.push(ModuleViolation::Identity { object: oc.objects()[a].clone(), side: Some(Variance::Left) });
                }
                let idr = self.right_vec(b, b, a, &ic.identity_dense(b));
                if idr != Mat::identity(f, self.dims[a][b]) {
                    violations.push(ModuleViolation::Identity { object: ic.objects()[b].clone(), side: Some(Variance::Right) });
                }
            }
        }
        for (x, y, _) in oc.nonzero_homs() {
            for z in 0..oc.num_objects() {
                for fi in oc.hom_range(x, y) {
                    for gi in oc.hom_range(y, z) {
                        let gf = crate::category::dense(oc.hom_dim(x, z), oc.compose_basis(gi, fi));
                        let ok = (0..ic.num_objects())
                            .all(|b| self.left_vec(x, z, b, &gf) == self.left[gi][b].mul(&self.left[fi][b]));
                        if !ok {
                            violations.push(ModuleViolation::Functoriality {
                                g: oc.describe(gi),
                                f: oc.describe(fi),
                                side: Some(Variance::Left),
                            });
                        }
                    }
                }
            }
        }
        for (x, y, _) in ic.nonzero_homs() {
            for z in 0..ic.num_objects() {
                for fi in ic.hom_range(x, y) {
                    for gi in ic.hom_range(y, z) {
                        let gf = crate::category::dense(ic.hom_dim(x, z), ic.compose_basis(gi, fi));
                        let ok = (0..oc.num_objects())
                            .all(|a| self.right_vec(x, z, a, &gf) == self.right[fi][a].mul(&self.right[gi][a]));
                        if !ok {
                            violations.push(ModuleViolation::Functoriality {
                                g: ic.describe(gi),
                                f: ic.describe(fi),
                                side: Some(Variance::Right),
                            });
                        }
                    }
                }
            }
        }
        for fi in 0..oc.num_morphisms() {
            let mf = oc.morphism(fi);
            for gi in 0..ic.num_morphisms() {
                let mg = ic.morphism(gi);
                // m ∈ _{src f}M_{tgt g}
                let lhs = self.left[fi][mg.src].mul(&self.right[gi][mf.src]);
                let rhs = self.right[gi][mf.tgt].mul(&self.left[fi][mg.tgt]);
                if lhs != rhs {
                    violations.push(ModuleViolation::Commutation { f: oc.describe(fi), g: ic.describe(gi) });
                }
            }
        }
        ModuleReport { violations }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleViolation {
    Identity { object: String, side: Option<Variance> },
    Functoriality { g: String, f: String, side: Option<Variance> },
    Commutation { f: String, g: String },
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: &Option<Variance>| s.map(|v| format!(" ({v} action)")).unwrap_or_default();
        match self {
            ModuleViolation::Identity { object, side: s } => {
                write!(out, "identity of {object} does not act as the identity{}", side(s))
            }
            ModuleViolation::Functoriality { g, f, side: s } => {
                write!(out, "action of g∘f differs from the composite of actions for g = {g}, f = {f}{}", side(s))
            }
            ModuleViolation::Commutation { f, g } => write!(out, "left action of {f} and right action of {g} do not commute"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub violations: Vec<ModuleViolation>,
}

impl ModuleReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}
