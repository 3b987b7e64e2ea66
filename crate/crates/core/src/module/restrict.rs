//! Restriction `r` and extension by zero `i` along full convex subcategories.

use std::sync::Arc;

use super::{is_natural, same_category, BimoduleRep, ModuleError, ModuleRep, NatTrans, Variance};
use crate::category::{Embedding, FinLinCategory};
use crate::linalg::Mat;

fn convex_subcategory(c: &FinLinCategory, sub: &[usize]) -> Result<(FinLinCategory, Embedding), ModuleError> {
    if !c.is_convex(sub)? {
        return Err(ModuleError::NotConvex);
    }
    Ok(c.full_subcategory(sub)?)
}

/// `r(M)`: the restriction of `m` to the full subcategory on `sub`.
pub fn restrict(m: &ModuleRep, sub: &[usize]) -> Result<ModuleRep, ModuleError> {
    let (d, emb) = convex_subcategory(m.base(), sub)?;
    Ok(restrict_along(m, Arc::new(d), &emb))
}

/// Restriction along an explicit inclusion of `sub` into the base of `m`.
pub fn restrict_along(m: &ModuleRep, sub: Arc<FinLinCategory>, emb: &Embedding) -> ModuleRep {
    let dims = emb.objects.iter().map(|x| m.dim(*x)).collect();
    let action = emb.morphisms.iter().map(|g| m.action(*g).clone()).collect();
    ModuleRep::new(m.variance(), sub, dims, action).expect("restriction keeps shapes")
}

/// `i(N)`: extension by zero of a module over the full subcategory on `sub`.
pub fn extend(n: &ModuleRep, ambient: Arc<FinLinCategory>, sub: &[usize]) -> Result<ModuleRep, ModuleError> {
    let (d, emb) = convex_subcategory(&ambient, sub)?;
    if **n.base() != d {
        return Err(ModuleError::BaseMismatch);
    }
    Ok(extend_along(n, ambient, &emb))
}

/// Extension by zero along an explicit inclusion. The image must be convex
/// for the result to be a module.
pub fn extend_along(n: &ModuleRep, ambient: Arc<FinLinCategory>, emb: &Embedding) -> ModuleRep {
    let f = ambient.field();
    let mut dims = vec![0; ambient.num_objects()];
    for (i, x) in emb.objects.iter().enumerate() {
        dims[*x] = n.dim(i);
    }
    let mut local = vec![None; ambient.num_morphisms()];
    for (i, g) in emb.morphisms.iter().enumerate() {
        local[*g] = Some(i);
    }
    let cat = ambient.clone();
    let d = dims.clone();
    ModuleRep::from_fn(n.variance(), ambient, dims, |g| match local[g] {
        Some(i) => n.action(i).clone(),
        None => {
            let m = cat.morphism(g);
            match n.variance() {
                Variance::Left => Mat::zeros(f, d[m.tgt], d[m.src]),
                Variance::Right => Mat::zeros(f, d[m.src], d[m.tgt]),
            }
        }
    })
}

/// Restriction of a bimodule along inclusions on both sides.
pub fn restrict_bimodule_along(
    m: &BimoduleRep,
    outer: (Arc<FinLinCategory>, &Embedding),
    inner: (Arc<FinLinCategory>, &Embedding),
) -> BimoduleRep {
    let (eo, ei) = (outer.1, inner.1);
    let dims = eo
        .objects
        .iter()
        .map(|a| ei.objects.iter().map(|b| m.dim(*a, *b)).collect())
        .collect();
    BimoduleRep::from_fn(
        outer.0,
        inner.0,
        dims,
        |g, b| m.left(eo.morphisms[g], ei.objects[b]).clone(),
        |g, a| m.right(ei.morphisms[g], eo.objects[a]).clone(),
    )
}

/// Extension by zero of a bimodule along inclusions on both sides.
pub fn extend_bimodule(
    n: &BimoduleRep,
    outer: (Arc<FinLinCategory>, &Embedding),
    inner: (Arc<FinLinCategory>, &Embedding),
) -> BimoduleRep {
    let f = n.field();
    let (oc, eo) = (outer.0.clone(), outer.1);
    let (ic, ei) = (inner.0.clone(), inner.1);
    let position = |emb: &Embedding, len: usize| {
        let mut p = vec![None; len];
        for (i, x) in emb.objects.iter().enumerate() {
            p[*x] = Some(i);
        }
        p
    };
    let morph_position = |emb: &Embedding, len: usize| {
        let mut p = vec![None; len];
        for (i, x) in emb.morphisms.iter().enumerate() {
            p[*x] = Some(i);
        }
        p
    };
    let (po, pi) = (position(eo, oc.num_objects()), position(ei, ic.num_objects()));
    let (mo, mi) = (morph_position(eo, oc.num_morphisms()), morph_position(ei, ic.num_morphisms()));
    let dim = |a: usize, b: usize| match (po[a], pi[b]) {
        (Some(i), Some(j)) => n.dim(i, j),
        _ => 0,
    };
    let dims = (0..oc.num_objects()).map(|a| (0..ic.num_objects()).map(|b| dim(a, b)).collect()).collect();
    BimoduleRep::from_fn(
        outer.0,
        inner.0,
        dims,
        |g, b| {
            let m = oc.morphism(g);
            match (mo[g], pi[b]) {
                (Some(i), Some(j)) => n.left(i, j).clone(),
                _ => Mat::zeros(f, dim(m.tgt, b), dim(m.src, b)),
            }
        },
        |g, a| {
            let m = ic.morphism(g);
            match (mi[g], po[a]) {
                (Some(j), Some(i)) => n.right(j, i).clone(),
                _ => Mat::zeros(f, dim(a, m.src), dim(a, m.tgt)),
            }
        },
    )
}

fn extend_components(
    src: &ModuleRep,
    tgt: &ModuleRep,
    sub: &[usize],
    t: &NatTrans,
) -> Result<NatTrans, ModuleError> {
    let f = src.field();
    if t.components.len() != sub.len() {
        return Err(ModuleError::Shape("one component per subcategory object is required".into()));
    }
    let mut comps: Vec<Mat> = (0..src.dims().len()).map(|x| Mat::zeros(f, tgt.dim(x), src.dim(x))).collect();
    for (i, x) in sub.iter().enumerate() {
        let c = &t.components[i];
        if (c.rows(), c.cols()) != (tgt.dim(*x), src.dim(*x)) {
            return Err(ModuleError::Shape(format!("component at object {x} has the wrong shape")));
        }
        comps[*x] = c.clone();
    }
    if !is_natural(src, tgt, &comps) {
        return Err(ModuleError::NotNatural(
            "extension by zero does not commute with morphisms leaving the subcategory".into(),
        ));
    }
    Ok(NatTrans { components: comps })
}

fn restrict_components(sub: &[usize], t: &NatTrans) -> NatTrans {
    NatTrans { components: sub.iter().map(|x| t.components[*x].clone()).collect() }
}

fn check_pair(m: &ModuleRep, n: &ModuleRep, sub: &[usize]) -> Result<ModuleRep, ModuleError> {
    if m.variance() != n.variance() {
        return Err(ModuleError::VarianceMismatch);
    }
    let i_n = extend(n, m.base().clone(), sub)?;
    if !same_category(i_n.base(), m.base()) {
        return Err(ModuleError::BaseMismatch);
    }
    Ok(i_n)
}

/// `θ: Hom_D(r(M), N) → Hom_C(M, i(N))`, extending components by zero.
///
/// Fails with [`ModuleError::NotNatural`] when the extended family does not
/// commute with the morphisms of `C` that leave `D`.
pub fn adjunction_theta(m: &ModuleRep, n: &ModuleRep, sub: &[usize], t: &NatTrans) -> Result<NatTrans, ModuleError> {
    let i_n = check_pair(m, n, sub)?;
    extend_components(m, &i_n, sub, t)
}

/// `ζ: Hom_C(M, i(N)) → Hom_D(r(M), N)`, restricting components.
pub fn adjunction_zeta(sub: &[usize], t: &NatTrans) -> NatTrans {
    restrict_components(sub, t)
}

/// `α: Hom_C(i(X), Y) → Hom_D(X, r(Y))`, restricting components.
pub fn adjunction_alpha(sub: &[usize], t: &NatTrans) -> NatTrans {
    restrict_components(sub, t)
}

/// `β: Hom_D(X, r(Y)) → Hom_C(i(X), Y)`, extending components by zero.
pub fn adjunction_beta(x: &ModuleRep, y: &ModuleRep, sub: &[usize], t: &NatTrans) -> Result<NatTrans, ModuleError> {
    let i_x = check_pair(y, x, sub)?;
    extend_components(&i_x, y, sub, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::fixtures;
    use crate::module::nat_hom;

    #[test]
    fn restrict_extend_round_trip() {
        let a3 = Arc::new(fixtures::a3_zero_relation());
        let p = ModuleRep::representable_right(a3.clone(), 2);
        let r = restrict(&p, &[0, 2]).unwrap();
        assert_eq!(r.dims(), &[0, 1]);
        let back = extend(&r, a3.clone(), &[0, 2]).unwrap();
        assert_eq!(restrict(&back, &[0, 2]).unwrap(), r);
        assert!(back.validate().is_valid());
        let all = restrict(&p, &[0, 1, 2]).unwrap();
        assert_eq!(all.dims(), p.dims());
        assert_eq!(all.actions(), p.actions());
    }

    #[test]
    fn non_convex_subsets_are_rejected() {
        let a3 = Arc::new(fixtures::a3());
        let p = ModuleRep::representable_right(a3, 2);
        assert_eq!(restrict(&p, &[0, 2]).unwrap_err(), ModuleError::NotConvex);
    }

    #[test]
    fn theta_and_zeta_on_a_terminal_object() {
        // D = {2} in A₂ has no morphism to an outside object.
        let a2 = Arc::new(fixtures::a2());
        let m = ModuleRep::representable_right(a2.clone(), 1);
        let (d, _) = a2.full_subcategory(&[1]).unwrap();
        let n = ModuleRep::representable_right(Arc::new(d), 0);
        let rm = restrict(&m, &[1]).unwrap();
        let basis = nat_hom(&rm, &n).unwrap();
        let i_n = extend(&n, a2.clone(), &[1]).unwrap();
        assert_eq!(basis.len(), nat_hom(&m, &i_n).unwrap().len());
        for t in &basis {
            let th = adjunction_theta(&m, &n, &[1], t).unwrap();
            assert_eq!(&adjunction_zeta(&[1], &th), t);
        }
    }

    #[test]
    fn theta_detects_non_natural_extension() {
        // D = {1} in A₂: the arrow 1 → 2 leaves D.
        let a2 = Arc::new(fixtures::a2());
        let m = ModuleRep::representable_right(a2.clone(), 1);
        let rm = restrict(&m, &[0]).unwrap();
        let t = NatTrans { components: vec![Mat::identity(a2.field(), 1)] };
        assert!(matches!(adjunction_theta(&m, &rm, &[0], &t), Err(ModuleError::NotNatural(_))));
    }
}
