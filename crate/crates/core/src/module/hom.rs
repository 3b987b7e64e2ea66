use super::{same_category, BimoduleRep, ModuleError, ModuleRep, Variance};
use crate::linalg::{rank, rank_kernel_image, Field, Mat, Scalar};

/// A family of maps `t_x: M_x → N_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub components: Vec<Mat>,
}

/// A family of maps `t_ab: _aM_b → _aN_b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BimoduleMap {
    pub components: Vec<Vec<Mat>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MapCheck {
    pub intertwines: bool,
    pub bijective: bool,
}

impl MapCheck {
    pub fn is_iso(&self) -> bool {
        self.intertwines && self.bijective
    }
}

/// Linear constraint rows accumulated block by block.
struct Constraints {
    field: Field,
    cols: usize,
    rows: usize,
    trip: Vec<(usize, usize, Scalar)>,
}

impl Constraints {
    fn new(field: Field, cols: usize) -> Constraints {
        Constraints { field, cols, rows: 0, trip: Vec::new() }
    }

    /// Adds rows `Σ terms[i].1 · x[terms[i].0 ..]`, all terms having the same row count.
    fn push(&mut self, terms: &[(usize, Mat)]) {
        let Some(h) = terms.first().map(|t| t.1.rows()) else { return };
        for (off, m) in terms {
            for (r, c, v) in m.entries() {
                self.trip.push((self.rows + r, off + c, v.clone()));
            }
        }
        self.rows += h;
    }

    fn kernel(self) -> Vec<Vec<Scalar>> {
        let m = Mat::from_triplets(self.field, self.rows, self.cols, self.trip);
        rank_kernel_image(&m).kernel
    }
}

/// Row-major `vec(P·X·Q) = (P ⊗ Qᵀ)·vec(X)`.
fn sandwich(p: &Mat, q: &Mat) -> Mat {
    p.kron(&q.transpose())
}

fn unvec(f: Field, v: &[Scalar], rows: usize, cols: usize) -> Mat {
    let trip = v
        .iter()
        .enumerate()
        .filter(|(_, x)| **x != f.zero())
        .map(|(i, x)| (i / cols.max(1), i % cols.max(1), x.clone()));
    Mat::from_triplets(f, rows, cols, trip)
}

fn check_modules(m: &ModuleRep, n: &ModuleRep) -> Result<(), ModuleError> {
    if !same_category(m.base(), n.base()) {
        return Err(ModuleError::BaseMismatch);
    }
    if m.variance() != n.variance() {
        return Err(ModuleError::VarianceMismatch);
    }
    Ok(())
}

/// Basis of the space of natural transformations `M → N`.
pub fn nat_hom(m: &ModuleRep, n: &ModuleRep) -> Result<Vec<NatTrans>, ModuleError> {
    check_modules(m, n)?;
    let c = m.base();
    let f = c.field();
    let no = c.num_objects();
    let mut offset = vec![0; no + 1];
    for x in 0..no {
        offset[x + 1] = offset[x] + n.dim(x) * m.dim(x);
    }
    let id = |d: usize| Mat::identity(f, d);
    let mut cons = Constraints::new(f, offset[no]);
    for (g, mor) in c.morphisms().iter().enumerate() {
        let (x, y) = (mor.src, mor.tgt);
        let (am, an) = (m.action(g), n.action(g));
        match m.variance() {
            // A_N(g)·t_x − t_y·A_M(g)
            Variance::Left => cons.push(&[
                (offset[x], sandwich(an, &id(m.dim(x)))),
                (offset[y], sandwich(&id(n.dim(y)), am).scale(&f.neg(&f.one()))),
            ]),
            // t_x·A_M(g) − A_N(g)·t_y
            Variance::Right => cons.push(&[
                (offset[x], sandwich(&id(n.dim(x)), am)),
                (offset[y], sandwich(an, &id(m.dim(y))).scale(&f.neg(&f.one()))),
            ]),
        }
    }
    Ok(cons
        .kernel()
        .into_iter()
        .map(|v| NatTrans {
            components: (0..no)
                .map(|x| unvec(f, &v[offset[x]..offset[x + 1]], n.dim(x), m.dim(x)))
                .collect(),
        })
        .collect())
}

/// True iff `components` has the right shapes and commutes with every action.
pub fn is_natural(m: &ModuleRep, n: &ModuleRep, components: &[Mat]) -> bool {
    if check_modules(m, n).is_err() || components.len() != m.dims().len() {
        return false;
    }
    if components.iter().enumerate().any(|(x, t)| (t.rows(), t.cols()) != (n.dim(x), m.dim(x))) {
        return false;
    }
    m.base().morphisms().iter().enumerate().all(|(g, mor)| {
        let (tx, ty) = (&components[mor.src], &components[mor.tgt]);
        match m.variance() {
            Variance::Left => n.action(g).mul(tx) == ty.mul(m.action(g)),
            Variance::Right => tx.mul(m.action(g)) == n.action(g).mul(ty),
        }
    })
}

fn check_bimodules(m: &BimoduleRep, n: &BimoduleRep) -> Result<(), ModuleError> {
    if !same_category(m.outer(), n.outer()) || !same_category(m.inner(), n.inner()) {
        return Err(ModuleError::BaseMismatch);
    }
    Ok(())
}

/// Basis of the space of bimodule maps `M → N`.
pub fn bimodule_hom(m: &BimoduleRep, n: &BimoduleRep) -> Result<Vec<BimoduleMap>, ModuleError> {
    check_bimodules(m, n)?;
    let (oc, ic) = (m.outer(), m.inner());
    let f = m.field();
    let (na, nb) = (oc.num_objects(), ic.num_objects());
    let mut offset = vec![vec![0; nb]; na];
    let mut total = 0;
    for a in 0..na {
        for b in 0..nb {
            offset[a][b] = total;
            total += n.dim(a, b) * m.dim(a, b);
        }
    }
    let id = |d: usize| Mat::identity(f, d);
    let minus = f.neg(&f.one());
    let mut cons = Constraints::new(f, total);
    for (g, mor) in oc.morphisms().iter().enumerate() {
        let (a, a2) = (mor.src, mor.tgt);
        for b in 0..nb {
            cons.push(&[
                (offset[a][b], sandwich(n.left(g, b), &id(m.dim(a, b)))),
                (offset[a2][b], sandwich(&id(n.dim(a2, b)), m.left(g, b)).scale(&minus)),
            ]);
        }
    }
    for (g, mor) in ic.morphisms().iter().enumerate() {
        let (b, b2) = (mor.src, mor.tgt);
        for a in 0..na {
            cons.push(&[
                (offset[a][b], sandwich(&id(n.dim(a, b)), m.right(g, a))),
                (offset[a][b2], sandwich(n.right(g, a), &id(m.dim(a, b2))).scale(&minus)),
            ]);
        }
    }
    Ok(cons
        .kernel()
        .into_iter()
        .map(|v| BimoduleMap {
            components: (0..na)
                .map(|a| {
                    (0..nb)
                        .map(|b| {
                            let o = offset[a][b];
                            unvec(f, &v[o..o + n.dim(a, b) * m.dim(a, b)], n.dim(a, b), m.dim(a, b))
                        })
                        .collect()
                })
                .collect(),
        })
        .collect())
}

/// Checks that `components` commutes with both actions and is invertible.
pub fn check_bimodule_map(m: &BimoduleRep, n: &BimoduleRep, components: &[Vec<Mat>]) -> Result<MapCheck, ModuleError> {
    check_bimodules(m, n)?;
    let (oc, ic) = (m.outer(), m.inner());
    let (na, nb) = (oc.num_objects(), ic.num_objects());
    let shapes = components.len() == na
        && components.iter().enumerate().all(|(a, row)| {
            row.len() == nb && row.iter().enumerate().all(|(b, t)| (t.rows(), t.cols()) == (n.dim(a, b), m.dim(a, b)))
        });
    if !shapes {
        return Err(ModuleError::Shape("map components have the wrong shape".into()));
    }
    let t = |a: usize, b: usize| &components[a][b];
    let left_ok = oc.morphisms().iter().enumerate().all(|(g, mor)| {
        (0..nb).all(|b| n.left(g, b).mul(t(mor.src, b)) == t(mor.tgt, b).mul(m.left(g, b)))
    });
    let right_ok = ic.morphisms().iter().enumerate().all(|(g, mor)| {
        (0..na).all(|a| t(a, mor.src).mul(m.right(g, a)) == n.right(g, a).mul(t(a, mor.tgt)))
    });
    let bijective = components
        .iter()
        .flatten()
        .all(|c| c.rows() == c.cols() && rank(c) == c.rows());
    Ok(MapCheck { intertwines: left_ok && right_ok, bijective })
}

/// The bimodule `Hom_k(M, N)` over `(D, D)`.
///
/// For left modules `_yH_x = Hom(M_x, N_y)`; for right modules
/// `_aH_b = Hom(M_a, N_b)`. In both cases the invariants `H⁰(D, H)` are the
/// natural transformations `M → N`.
pub fn hom_k(m: &ModuleRep, n: &ModuleRep) -> Result<BimoduleRep, ModuleError> {
    check_modules(m, n)?;
    let c = m.base().clone();
    let f = c.field();
    let no = c.num_objects();
    let id = move |d: usize| Mat::identity(f, d);
    Ok(match m.variance() {
        Variance::Left => {
            let dims = (0..no).map(|y| (0..no).map(|x| n.dim(y) * m.dim(x)).collect()).collect();
            BimoduleRep::from_fn(
                c.clone(),
                c,
                dims,
                |g, x| sandwich(n.action(g), &id(m.dim(x))),
                |g, y| sandwich(&id(n.dim(y)), m.action(g)),
            )
        }
        Variance::Right => {
            let dims = (0..no).map(|a| (0..no).map(|b| n.dim(b) * m.dim(a)).collect()).collect();
            BimoduleRep::from_fn(
                c.clone(),
                c,
                dims,
                |g, b| sandwich(&id(n.dim(b)), m.action(g)),
                |g, a| sandwich(n.action(g), &id(m.dim(a))),
            )
        }
    })
}

impl NatTrans {
    pub fn zero(m: &ModuleRep, n: &ModuleRep) -> NatTrans {
        let f = m.field();
        NatTrans { components: (0..m.dims().len()).map(|x| Mat::zeros(f, n.dim(x), m.dim(x))).collect() }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::category::fixtures;

    #[test]
    fn representable_endomorphisms() {
        // Yoneda: Hom(hom(−, x), hom(−, y)) ≅ hom(x, y).
        for c in [fixtures::a2(), fixtures::a3(), fixtures::kronecker(), fixtures::full2()] {
            let c = Arc::new(c);
            for x in 0..c.num_objects() {
                for y in 0..c.num_objects() {
                    let px = ModuleRep::representable_right(c.clone(), x);
                    let py = ModuleRep::representable_right(c.clone(), y);
                    let basis = nat_hom(&px, &py).unwrap();
                    assert_eq!(basis.len(), c.hom_dim(x, y));
                    for t in &basis {
                        assert!(is_natural(&px, &py, &t.components));
                    }
                }
            }
        }
    }

    #[test]
    fn bimodule_endomorphisms_of_regular_give_the_center() {
        let kr = Arc::new(fixtures::kronecker());
        let r = BimoduleRep::regular(kr);
        let basis = bimodule_hom(&r, &r).unwrap();
        assert_eq!(basis.len(), 1);
        let id: Vec<Vec<Mat>> = r
            .dims()
            .iter()
            .map(|row| row.iter().map(|d| Mat::identity(Field::Rationals, *d)).collect())
            .collect();
        assert!(check_bimodule_map(&r, &r, &id).unwrap().is_iso());
    }

    #[test]
    fn hom_k_invariants_are_natural_maps() {
        let a2 = Arc::new(fixtures::a2());
        for v in [Variance::Left, Variance::Right] {
            let s1 = ModuleRep::simple(v, a2.clone(), 0).unwrap();
            let p = match v {
                Variance::Left => ModuleRep::representable_left(a2.clone(), 0),
                Variance::Right => ModuleRep::representable_right(a2.clone(), 1),
            };
            assert!(hom_k(&s1, &p).unwrap().validate().is_valid());
            assert!(hom_k(&p, &s1).unwrap().validate().is_valid());
        }
    }
}
