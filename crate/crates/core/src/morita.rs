//! Contraction along a partition `E` is a Morita equivalence `C ~ C/E`.
//!
//! With `D = C/E`, the witnesses are the `D`-`C` bimodule
//! `_eP_x = ⊕_{y ∈ E_e} hom(x, y)` and the `C`-`D` bimodule
//! `_xQ_e = ⊕_{y ∈ E_e} hom(y, x)`; then `P ⊗_C Q ≅ D` by composition and
//! `Q ⊗_D P ≅ C` by composition of matching constituents.

use std::sync::Arc;

use serde::Serialize;

use crate::category::{CategoryError, FinLinCategory, Partition};
use crate::hochschild::{hh_regular, HochschildError, Variant};
use crate::linalg::{Field, Mat};
use crate::module::{tensor_over_cat, BimoduleRep, ModuleError};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MoritaError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
}

#[derive(Clone, Debug)]
pub struct MoritaWitness {
    pub c: Arc<FinLinCategory>,
    pub d: Arc<FinLinCategory>,
    pub partition: Partition,
    /// Outer `C/E`, inner `C`.
    pub p: BimoduleRep,
    /// Outer `C`, inner `C/E`.
    pub q: BimoduleRep,
}

/// Offsets of the constituents `y ∈ E_e` in `⊕_y dim(y)`.
fn class_offsets(class: &[usize], dim: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(class.len() + 1);
    let mut acc = 0;
    out.push(0);
    for y in class {
        acc += dim(*y);
        out.push(acc);
    }
    out
}

/// The `D`-morphism with global index `g` as `(a, b, h)`: `h: a → b` in `C`.
fn constituent(c: &FinLinCategory, d: &FinLinCategory, e: &Partition, g: usize) -> (usize, usize, usize) {
    let m = d.morphism(g);
    let (xs, ys) = (&e.classes()[m.src].1, &e.classes()[m.tgt].1);
    let mut off = 0;
    for &a in xs {
        for &b in ys {
            let dim = c.hom_dim(a, b);
            if m.local < off + dim {
                return (a, b, c.hom_range(a, b).start + m.local - off);
            }
            off += dim;
        }
    }
    unreachable!("contracted basis covers every constituent")
}

/// Matrix of `u ↦ h∘u` (`left`) or `u ↦ u∘h` on basis morphisms.
fn compose_matrix(c: &FinLinCategory, h: usize, src: (usize, usize), left: bool) -> Mat {
    let f = c.field();
    let hm = c.morphism(h);
    let (rows, trip): (usize, Vec<_>) = if left {
        let rows = c.hom_dim(src.0, hm.tgt);
        let t = c
            .hom_range(src.0, src.1)
            .enumerate()
            .flat_map(|(ul, u)| c.compose_basis(h, u).iter().map(move |(r, v)| (*r, ul, v.clone())))
            .collect();
        (rows, t)
    } else {
        let rows = c.hom_dim(hm.src, src.1);
        let t = c
            .hom_range(src.0, src.1)
            .enumerate()
            .flat_map(|(ul, u)| c.compose_basis(u, h).iter().map(move |(r, v)| (*r, ul, v.clone())))
            .collect();
        (rows, t)
    };
    Mat::from_triplets(f, rows, c.hom_dim(src.0, src.1), trip)
}

fn place(f: Field, rows: usize, cols: usize, r0: usize, c0: usize, m: &Mat) -> Mat {
    Mat::from_triplets(f, rows, cols, m.entries().iter().map(|(r, c, v)| (r0 + r, c0 + c, v.clone())))
}

pub fn contraction_bimodules(c: Arc<FinLinCategory>, e: &Partition) -> Result<MoritaWitness, MoritaError> {
    let d = Arc::new(c.contract(e)?);
    let f = c.field();
    let classes = e.classes();
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let p_off = |ei: usize, x: usize| class_offsets(&classes[ei].1, |y| c.hom_dim(x, y));
    let q_off = |x: usize, ei: usize| class_offsets(&classes[ei].1, |y| c.hom_dim(y, x));

    let p_dims = (0..nd).map(|ei| (0..nc).map(|x| *p_off(ei, x).last().unwrap()).collect()).collect();
    let p = BimoduleRep::from_fn(
        d.clone(),
        c.clone(),
        p_dims,
        |g, x| {
            let dm = d.morphism(g);
            let (a, b, h) = constituent(&c, &d, e, g);
            let (so, to) = (p_off(dm.src, x), p_off(dm.tgt, x));
            let ia = classes[dm.src].1.iter().position(|y| *y == a).unwrap();
            let ib = classes[dm.tgt].1.iter().position(|y| *y == b).unwrap();
            place(f, *to.last().unwrap(), *so.last().unwrap(), to[ib], so[ia], &compose_matrix(&c, h, (x, a), true))
        },
        |g, ei| {
            let cm = c.morphism(g);
            let (so, to) = (p_off(ei, cm.tgt), p_off(ei, cm.src));
            let mut out = Mat::zeros(f, *to.last().unwrap(), *so.last().unwrap());
            for (k, y) in classes[ei].1.iter().enumerate() {
                out = out.add(&place(
                    f,
                    out.rows(),
                    out.cols(),
                    to[k],
                    so[k],
                    &compose_matrix(&c, g, (cm.tgt, *y), false),
                ));
            }
            out
        },
    );

    let q_dims = (0..nc).map(|x| (0..nd).map(|ei| *q_off(x, ei).last().unwrap()).collect()).collect();
    let q = BimoduleRep::from_fn(
        c.clone(),
        d.clone(),
        q_dims,
        |g, ei| {
            let cm = c.morphism(g);
            let (so, to) = (q_off(cm.src, ei), q_off(cm.tgt, ei));
            let mut out = Mat::zeros(f, *to.last().unwrap(), *so.last().unwrap());
            for (k, y) in classes[ei].1.iter().enumerate() {
                out = out.add(&place(
                    f,
                    out.rows(),
                    out.cols(),
                    to[k],
                    so[k],
                    &compose_matrix(&c, g, (*y, cm.src), true),
                ));
            }
            out
        },
        |g, x| {
            let dm = d.morphism(g);
            let (a, b, h) = constituent(&c, &d, e, g);
            // _xQ_{e'} → _xQ_e: the constituent at b goes to the one at a.
            let (so, to) = (q_off(x, dm.tgt), q_off(x, dm.src));
            let ia = classes[dm.src].1.iter().position(|y| *y == a).unwrap();
            let ib = classes[dm.tgt].1.iter().position(|y| *y == b).unwrap();
            place(f, *to.last().unwrap(), *so.last().unwrap(), to[ia], so[ib], &compose_matrix(&c, h, (b, x), false))
        },
    );
    Ok(MoritaWitness { c, d, partition: e.clone(), p, q })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MoritaReport {
    pub p_valid: bool,
    pub q_valid: bool,
    /// `P ⊗_C Q ≅ C/E` through composition.
    pub pq_iso: bool,
    /// `Q ⊗_{C/E} P ≅ C` through composition of matching constituents.
    pub qp_iso: bool,
    pub pq_dim: usize,
    pub qp_dim: usize,
}

impl MoritaReport {
    pub fn holds(&self) -> bool {
        self.p_valid && self.q_valid && self.pq_iso && self.qp_iso
    }
}

pub fn morita_witness_check(w: &MoritaWitness) -> Result<MoritaReport, MoritaError> {
    let (c, d, e) = (&w.c, &w.d, &w.partition);
    let f = c.field();
    let classes = e.classes();
    let (nc, nd) = (c.num_objects(), d.num_objects());

    let pq = tensor_over_cat(&w.p, &w.q)?;
    let reg_d = BimoduleRep::regular(d.clone());
    // u ⊗ v with u ∈ hom(x, y), v ∈ hom(y', x) goes to u∘v in block (y', y).
    let pq_map = |ei: usize, fi: usize| {
        let mut trip = Vec::new();
        for x in 0..nc {
            let base = pq.block_offset(ei, fi, x);
            let qd = w.q.dim(x, fi);
            let mut pcol = 0;
            for &y in &classes[ei].1 {
                for u in c.hom_range(x, y) {
                    let mut qcol = 0;
                    for &y2 in &classes[fi].1 {
                        let off = e.block_offset(c, y2, y);
                        for v in c.hom_range(y2, x) {
                            for (r, val) in c.compose_basis(u, v) {
                                trip.push((off + r, base + pcol * qd + qcol, val.clone()));
                            }
                            qcol += 1;
                        }
                    }
                    pcol += 1;
                }
            }
        }
        Mat::from_triplets(f, reg_d.dim(ei, fi), pq.ambient_dim(ei, fi), trip)
    };
    let pq_check = pq.check_induced(&reg_d, pq_map)?;

    let qp = tensor_over_cat(&w.q, &w.p)?;
    let reg_c = BimoduleRep::regular(c.clone());
    // v ⊗ u with v ∈ hom(y, x), u ∈ hom(x', y') goes to v∘u when y = y'.
    let qp_map = |x: usize, x2: usize| {
        let mut trip = Vec::new();
        for ei in 0..nd {
            let base = qp.block_offset(x, x2, ei);
            let pd = w.p.dim(ei, x2);
            let (qo, po) = (
                class_offsets(&classes[ei].1, |y| c.hom_dim(y, x)),
                class_offsets(&classes[ei].1, |y| c.hom_dim(x2, y)),
            );
            for (k, &y) in classes[ei].1.iter().enumerate() {
                for (vl, v) in c.hom_range(y, x).enumerate() {
                    for (ul, u) in c.hom_range(x2, y).enumerate() {
                        for (r, val) in c.compose_basis(v, u) {
                            trip.push((*r, base + (qo[k] + vl) * pd + po[k] + ul, val.clone()));
                        }
                    }
                }
            }
        }
        Mat::from_triplets(f, reg_c.dim(x, x2), qp.ambient_dim(x, x2), trip)
    };
    let qp_check = qp.check_induced(&reg_c, qp_map)?;

    Ok(MoritaReport {
        p_valid: w.p.validate().is_valid(),
        q_valid: w.q.validate().is_valid(),
        pq_iso: pq_check.is_iso(),
        qp_iso: qp_check.is_iso(),
        pq_dim: pq.bimodule().total_dim(),
        qp_dim: qp.bimodule().total_dim(),
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HhInvariance {
    pub cohomology: (Vec<usize>, Vec<usize>),
    pub homology: (Vec<usize>, Vec<usize>),
    pub equal: bool,
}

/// HH dimensions of `C` and `C/E` in both variants.
pub fn hh_invariance_report(
    c: &Arc<FinLinCategory>,
    e: &Partition,
    max_degree: usize,
) -> Result<HhInvariance, MoritaError> {
    let d = Arc::new(c.contract(e)?);
    let co = (
        hh_regular(c, max_degree, Variant::Cohomology)?,
        hh_regular(&d, max_degree, Variant::Cohomology)?,
    );
    let ho = (hh_regular(c, max_degree, Variant::Homology)?, hh_regular(&d, max_degree, Variant::Homology)?);
    let equal = co.0 == co.1 && ho.0 == ho.1;
    Ok(HhInvariance { cohomology: co, homology: ho, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::fixtures;

    #[test]
    fn singleton_partition_gives_regular_bimodules() {
        let c = Arc::new(fixtures::a2());
        let w = contraction_bimodules(c.clone(), &Partition::singletons(&c)).unwrap();
        assert_eq!(w.p.dims(), BimoduleRep::regular(c.clone()).dims());
        assert!(morita_witness_check(&w).unwrap().holds());
    }

    #[test]
    fn one_class_contractions() {
        let full2 = Arc::new(fixtures::full2());
        let w = contraction_bimodules(full2.clone(), &Partition::one_class(&full2, "e")).unwrap();
        assert_eq!(w.p.dims(), &[vec![2, 2]]);
        let r = morita_witness_check(&w).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!((r.pq_dim, r.qp_dim), (4, 4));

        let a2 = Arc::new(fixtures::a2());
        let w = contraction_bimodules(a2.clone(), &Partition::one_class(&a2, "e")).unwrap();
        assert_eq!(w.p.dims(), &[vec![2, 1]]);
        assert!(morita_witness_check(&w).unwrap().holds());
        assert!(hh_invariance_report(&a2, &Partition::one_class(&a2, "e"), 3).unwrap().equal);
    }
}
