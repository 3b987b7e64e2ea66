//! One-point extensions, the glued category `C₁ ⊔_M C₂`, the bimodule
//! resolution `M̃` and the long exact sequences relating their cohomology.
//!
//! In `C₁ ⊔_M C₂` the objects of `C₂` come first, then those of `C₁`; the
//! morphisms from `y ∈ C₂` to `x ∈ C₁` are `_xM_y`, and there are none from
//! `C₁` to `C₂`.

mod lemma41;
mod les;
mod tilde;

use std::sync::Arc;

use thiserror::Error;

pub use lemma41::{kernel_check, lemma41_report, KernelCheck, Lemma41Item, Lemma41Report};
pub use les::{cochain_ses, happel_les, les_check, LesReport};
pub use tilde::{ext_dims_tilde, DoubleComplex, DoubleComplexCheck, TildeComplex, TildeReport};

use crate::category::{sparse, CategoryBuilder, CategoryError, Embedding, FinLinCategory};
use crate::hochschild::HochschildError;
use crate::linalg::{Field, LinalgError, Mat};
use crate::module::{extend_bimodule, restrict_bimodule_along, BimoduleRep, ModuleError, ModuleRep, Variance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GluingError {
    #[error("coefficients are not a bimodule over the glued category")]
    BaseMismatch,
    #[error("the module is zero")]
    ZeroModule,
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `C₁ ⊔_M C₂` together with the inclusions of `C₁`, `C₂` and the basis of `M`.
#[derive(Clone, Debug)]
pub struct GluedCategory {
    category: Arc<FinLinCategory>,
    m: BimoduleRep,
    emb1: Embedding,
    emb2: Embedding,
}

/// Object names for the glued category: colliding names get a side prefix.
fn glued_names(c1: &FinLinCategory, c2: &FinLinCategory) -> (Vec<String>, Vec<String>) {
    let clash = |o: &String, other: &FinLinCategory| other.objects().contains(o);
    let n2 = c2
        .objects()
        .iter()
        .map(|o| if clash(o, c1) { format!("2:{o}") } else { o.clone() })
        .collect();
    let n1 = c1
        .objects()
        .iter()
        .map(|o| if clash(o, c2) { format!("1:{o}") } else { o.clone() })
        .collect();
    (n1, n2)
}

/// Glues `m.outer()` and `m.inner()` along the bimodule `m`.
pub fn glue(m: &BimoduleRep) -> Result<GluedCategory, GluingError> {
    let (c1, c2) = (m.outer().clone(), m.inner().clone());
    if c1.field() != c2.field() {
        return Err(CategoryError::FieldMismatch(c1.field(), c2.field()).into());
    }
    let (names1, names2) = glued_names(&c1, &c2);
    let n2 = c2.num_objects();
    let o1 = |a: usize| n2 + a;
    let mut b = CategoryBuilder::new(c1.field());
    for o in names2.iter().chain(&names1) {
        b.object(o.clone());
    }
    for (x, y, _) in c2.nonzero_homs() {
        b.hom(x, y, c2.hom_ids(x, y).into_iter().map(String::from).collect::<Vec<_>>());
    }
    for (x, y, _) in c1.nonzero_homs() {
        b.hom(o1(x), o1(y), c1.hom_ids(x, y).into_iter().map(String::from).collect::<Vec<_>>());
    }
    for a in 0..c1.num_objects() {
        for y in 0..n2 {
            b.hom(y, o1(a), (0..m.dim(a, y)).map(|i| format!("m{i}")).collect::<Vec<_>>());
        }
    }
    for y in 0..n2 {
        b.identity(y, c2.identity(y).clone());
    }
    for a in 0..c1.num_objects() {
        b.identity(o1(a), c1.identity(a).clone());
    }
    for (g, f, v) in c2.composition_table() {
        let (mg, mf) = (c2.morphism(g), c2.morphism(f));
        b.compose((mg.src, mg.tgt, mg.local), (mf.src, mf.tgt, mf.local), v.clone());
    }
    for (g, f, v) in c1.composition_table() {
        let (mg, mf) = (c1.morphism(g), c1.morphism(f));
        b.compose((o1(mg.src), o1(mg.tgt), mg.local), (o1(mf.src), o1(mf.tgt), mf.local), v.clone());
    }
    let sparse_col = |mat: &Mat, i: usize| sparse(&mat.column(i));
    // C₁ after M: g∘m = L(g)·m.
    for (g, mg) in c1.morphisms().iter().enumerate() {
        for y in 0..n2 {
            for i in 0..m.dim(mg.src, y) {
                let col = sparse_col(m.left(g, y), i);
                b.compose((o1(mg.src), o1(mg.tgt), mg.local), (y, o1(mg.src), i), col);
            }
        }
    }
    // M after C₂: m∘h = R(h)·m.
    for (h, mh) in c2.morphisms().iter().enumerate() {
        for a in 0..c1.num_objects() {
            for i in 0..m.dim(a, mh.tgt) {
                let col = sparse_col(m.right(h, a), i);
                b.compose((mh.tgt, o1(a), i), (mh.src, mh.tgt, mh.local), col);
            }
        }
    }
    let category = b.build()?;
    let embed = |c: &FinLinCategory, shift: usize| Embedding {
        objects: (0..c.num_objects()).map(|x| x + shift).collect(),
        morphisms: c
            .morphisms()
            .iter()
            .map(|mm| category.hom_range(mm.src + shift, mm.tgt + shift).start + mm.local)
            .collect(),
    };
    let emb1 = embed(&c1, n2);
    let emb2 = embed(&c2, 0);
    Ok(GluedCategory { category: Arc::new(category), m: m.clone(), emb1, emb2 })
}

/// A one-object category with endomorphisms `k·id`.
pub fn point_category(field: Field, name: &str) -> FinLinCategory {
    let mut b = CategoryBuilder::new(field);
    let x = b.object(name);
    b.hom(x, x, ["id"]);
    b.unit(x, 0);
    b.build().expect("the point category is well formed")
}

/// `C[M]` for a right `C`-module `M`: `C` plus a new object `M` with
/// `hom(x, M) = M_x`, `hom(M, M) = k` and `hom(M, x) = 0`.
pub fn one_point_extension(m: &ModuleRep) -> Result<GluedCategory, GluingError> {
    if m.variance() != Variance::Right {
        return Err(ModuleError::VarianceMismatch.into());
    }
    let c = m.base().clone();
    let mut name = String::from("M");
    while c.objects().contains(&name) {
        name.push('\'');
    }
    let f = c.field();
    let point = Arc::new(point_category(f, &name));
    let left = vec![m.dims().iter().map(|d| Mat::identity(f, *d)).collect()];
    let right = m.actions().iter().map(|a| vec![a.clone()]).collect();
    let bimodule = BimoduleRep::new(point, c, vec![m.dims().to_vec()], left, right)?;
    glue(&bimodule)
}

impl GluedCategory {
    pub fn category(&self) -> &Arc<FinLinCategory> {
        &self.category
    }

    pub fn c1(&self) -> &Arc<FinLinCategory> {
        self.m.outer()
    }

    pub fn c2(&self) -> &Arc<FinLinCategory> {
        self.m.inner()
    }

    pub fn m(&self) -> &BimoduleRep {
        &self.m
    }

    pub fn embedding1(&self) -> &Embedding {
        &self.emb1
    }

    pub fn embedding2(&self) -> &Embedding {
        &self.emb2
    }

    /// True for objects coming from `C₂`.
    pub fn in_c2(&self, x: usize) -> bool {
        x < self.c2().num_objects()
    }

    /// For a one-point extension, the new object.
    pub fn apex(&self) -> usize {
        self.emb1.objects[0]
    }

    fn check(&self, n: &BimoduleRep) -> Result<(), GluingError> {
        if **n.outer() != *self.category || **n.inner() != *self.category {
            return Err(GluingError::BaseMismatch);
        }
        Ok(())
    }

    /// `r₁(N)` over `C₁`.
    pub fn r1(&self, n: &BimoduleRep) -> Result<BimoduleRep, GluingError> {
        self.check(n)?;
        Ok(restrict_bimodule_along(n, (self.c1().clone(), &self.emb1), (self.c1().clone(), &self.emb1)))
    }

    /// `r₂(N)` over `C₂`.
    pub fn r2(&self, n: &BimoduleRep) -> Result<BimoduleRep, GluingError> {
        self.check(n)?;
        Ok(restrict_bimodule_along(n, (self.c2().clone(), &self.emb2), (self.c2().clone(), &self.emb2)))
    }

    /// `r₁,₂(N)`, a `C₁`-`C₂` bimodule.
    pub fn r12(&self, n: &BimoduleRep) -> Result<BimoduleRep, GluingError> {
        self.check(n)?;
        Ok(restrict_bimodule_along(n, (self.c1().clone(), &self.emb1), (self.c2().clone(), &self.emb2)))
    }

    pub fn regular(&self) -> BimoduleRep {
        BimoduleRep::regular(self.category.clone())
    }

    /// `M̄ = hom(−, M)`, the representable right module at the apex.
    pub fn mbar(&self) -> ModuleRep {
        ModuleRep::representable_right(self.category.clone(), self.apex())
    }

    /// The simple right module at the apex.
    pub fn simple(&self) -> ModuleRep {
        ModuleRep::simple(Variance::Right, self.category.clone(), self.apex()).expect("the apex has endomorphisms k")
    }

    /// `j(N)`: a `C₂`-bimodule extended by zero to the glued category.
    pub fn j(&self, n: &BimoduleRep) -> BimoduleRep {
        extend_bimodule(n, (self.category.clone(), &self.emb2), (self.category.clone(), &self.emb2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::fixtures;
    use crate::module::nat_hom;

    fn k_module(c: Arc<FinLinCategory>, dim: usize) -> ModuleRep {
        let f = c.field();
        ModuleRep::new(Variance::Right, c, vec![dim], vec![Mat::identity(f, dim)]).unwrap()
    }

    #[test]
    fn one_point_extensions_of_one() {
        let one = Arc::new(fixtures::one());
        let a2 = one_point_extension(&k_module(one.clone(), 1)).unwrap();
        let c = a2.category();
        assert!(c.validate().is_valid());
        assert_eq!(c.objects(), &["*".to_string(), "M".to_string()]);
        assert_eq!((c.hom_dim(0, 1), c.hom_dim(1, 0), c.total_hom_dim()), (1, 0, 3));
        let kr = one_point_extension(&k_module(one, 2)).unwrap();
        assert_eq!(kr.category().hom_dim(0, 1), 2);
        assert!(kr.category().validate().is_valid());
        assert!(kr.category().is_convex(&[0]).unwrap());
    }

    #[test]
    fn mbar_is_projective_at_the_apex() {
        let a2 = Arc::new(fixtures::a2());
        let m = ModuleRep::representable_right(a2, 1);
        let g = one_point_extension(&m).unwrap();
        assert!(g.category().validate().is_valid());
        let mbar = g.mbar();
        assert_eq!(nat_hom(&mbar, &mbar).unwrap().len(), 1);
        assert_eq!(nat_hom(&g.simple(), &mbar).unwrap().len(), 0);
        assert_eq!(g.j(&BimoduleRep::regular(g.c2().clone())).total_dim(), g.c2().total_hom_dim());
    }

    #[test]
    fn glued_names_are_disambiguated() {
        let a2 = Arc::new(fixtures::a2());
        let m = BimoduleRep::regular(a2.clone());
        let g = glue(&m).unwrap();
        assert!(g.category().validate().is_valid());
        assert_eq!(g.category().objects()[0], "2:1");
        assert_eq!(g.category().objects()[2], "1:1");
        assert_eq!(g.category().total_hom_dim(), 9);
    }
}
